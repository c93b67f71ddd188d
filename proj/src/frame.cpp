// SPDX-License-Identifier: Apache-2.0
#include "tdsim/frame.hpp"

#include <stdexcept>

namespace tdsim::frame {

const char* to_string(SlotMode mode) {
  switch (mode) {
    case SlotMode::SU: return "SU";
    case SlotMode::SD: return "SD";
    case SlotMode::U: return "U";
    case SlotMode::D: return "D";
  }
  return "?";
}

const char* RegimeLabel::color() const {
  switch (priority) {
    case 1: return "yellow";
    case 2: return "green";
    case 3: return "blue";
    case 4: return "red";
  }
  return "?";
}

RegimeLabel classify_regime(SlotMode training_path, SlotMode serving_mode,
                            SlotMode interferer_mode) {
  if (training_path != SlotMode::SU && training_path != SlotMode::SD) {
    throw std::invalid_argument("training path must be SU or SD");
  }
  const auto is_data = [](SlotMode m) { return m == SlotMode::U || m == SlotMode::D; };
  if (!is_data(serving_mode) || !is_data(interferer_mode)) {
    throw std::invalid_argument("data modes must be U or D");
  }

  RegimeLabel label{};
  label.mode = training_path == SlotMode::SD ? ContaminationMode::PcrD
                                             : ContaminationMode::PcrU;
  const bool same_direction = serving_mode == interferer_mode;
  // PCR-D beams at the interfering base station: a collision is the
  // reverse-TDD pairing. PCR-U beams at the interfering user: a collision
  // is the co-directional pairing.
  const bool icr = label.mode == ContaminationMode::PcrD ? !same_direction : same_direction;
  label.state = icr ? ContaminationState::Icr : ContaminationState::Rcr;
  if (label.mode == ContaminationMode::PcrD) {
    label.priority = icr ? 4 : 1;
  } else {
    label.priority = icr ? 3 : 2;
  }
  return label;
}

FrameMatrix::FrameMatrix(int num_cells, int n_data)
    : num_cells_(num_cells), n_data_(n_data) {
  if (num_cells < 1) throw std::invalid_argument("a frame needs at least the macro row");
  if (n_data < 1) throw std::invalid_argument("a frame needs at least one data slot");
  modes_.assign(static_cast<std::size_t>(num_cells) * num_cols(), SlotMode::U);
  boost_.assign(modes_.size(), 0);
  for (int b = 0; b < num_cells; ++b) set_mode(b, 0, SlotMode::SU);
}

std::string FrameMatrix::grid() const {
  std::string out;
  for (int b = 0; b < num_cells_; ++b) {
    for (int c = 0; c < num_cols(); ++c) {
      if (c > 0) out += ' ';
      out += to_string(mode(b, c));
      if (boosted(b, c)) out += '*';
    }
    if (b + 1 < num_cells_) out += '\n';
  }
  return out;
}

int count_icr_collisions(std::span<const SlotMode> macro_data,
                         std::span<const SlotMode> small_data, SlotMode training_path) {
  if (macro_data.size() != small_data.size()) {
    throw std::invalid_argument("rows must have equal length");
  }
  int count = 0;
  for (std::size_t t = 0; t < macro_data.size(); ++t) {
    const auto label = classify_regime(training_path, macro_data[t], small_data[t]);
    if (label.state == ContaminationState::Icr) ++count;
  }
  return count;
}

FrameMatrix permute_data_columns(const FrameMatrix& frame,
                                 std::span<const int> permutation) {
  if (static_cast<int>(permutation.size()) != frame.n_data()) {
    throw std::invalid_argument("permutation must cover all data columns");
  }
  std::vector<bool> seen(frame.n_data(), false);
  for (const int p : permutation) {
    if (p < 0 || p >= frame.n_data() || seen[p]) {
      throw std::invalid_argument("not a permutation of the data columns");
    }
    seen[p] = true;
  }
  FrameMatrix out(frame.num_cells(), frame.n_data());
  for (int b = 0; b < frame.num_cells(); ++b) {
    out.set_mode(b, 0, frame.mode(b, 0));
    for (int c = 0; c < frame.n_data(); ++c) {
      out.set_mode(b, c + 1, frame.mode(b, permutation[c] + 1));
      out.set_boost(b, c + 1, frame.boosted(b, permutation[c] + 1));
    }
  }
  return out;
}

std::vector<std::string> validate(const FrameMatrix& frame,
                                  std::span<const deploy::LoadDistribution> loads) {
  std::vector<std::string> violations;
  const auto complain = [&](std::string msg) { violations.push_back(std::move(msg)); };

  if (static_cast<int>(loads.size()) != frame.num_cells()) {
    complain("load count does not match the number of cells");
    return violations;
  }
  if (frame.mode(0, 0) != SlotMode::SU) complain("macro training slot must be S_U");

  for (int b = 0; b < frame.num_cells(); ++b) {
    const std::string cell = "cell " + std::to_string(b);
    const SlotMode training = frame.mode(b, 0);
    if (training != SlotMode::SU && training != SlotMode::SD) {
      complain(cell + ": training column must be S_U or S_D");
    }
    if (frame.boosted(b, 0)) complain(cell + ": training slot cannot carry a boost");

    if (loads[b].n_d + loads[b].n_u != frame.n_data()) {
      complain(cell + ": loads do not sum to the data slot count");
    }
    int n_d = 0;
    int n_u = 0;
    for (int c = 1; c <= frame.n_data(); ++c) {
      const SlotMode m = frame.mode(b, c);
      if (m == SlotMode::D) {
        ++n_d;
      } else if (m == SlotMode::U) {
        ++n_u;
      } else {
        complain(cell + ": data column " + std::to_string(c) + " must be U or D");
        continue;
      }
      if (frame.boosted(b, c)) {
        if (b == 0) complain(cell + ": macro slots cannot carry a boost");
        if (m != SlotMode::U) {
          complain(cell + ": boost on a non-U slot (column " + std::to_string(c) + ")");
        }
      }
    }
    if (n_d != loads[b].n_d || n_u != loads[b].n_u) {
      complain(cell + ": slot counts (" + std::to_string(n_d) + "D/" + std::to_string(n_u) +
               "U) do not match the load (" + std::to_string(loads[b].n_d) + "D/" +
               std::to_string(loads[b].n_u) + "U)");
    }
  }
  return violations;
}

}  // namespace tdsim::frame
