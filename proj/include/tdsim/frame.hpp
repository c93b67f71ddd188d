// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdsim/deployment.hpp"

namespace tdsim::frame {

// The four slot modes: uplink/downlink pilot and uplink/downlink data.
enum class SlotMode : std::uint8_t { SU, SD, U, D };

const char* to_string(SlotMode mode);

enum class ContaminationMode : std::uint8_t { PcrD, PcrU };
enum class ContaminationState : std::uint8_t { Rcr, Icr };

// One cell of the regime classification table. Priorities order the four
// quadrants: 1 yellow (PCR-D RCR), 2 green (PCR-U RCR), 3 blue (PCR-U ICR),
// 4 red (PCR-D ICR); lower is better.
struct RegimeLabel {
  ContaminationMode mode;
  ContaminationState state;
  int priority;
  const char* color() const;
};

// Classifies one data slot of a (macro, interfering small cell) pair given
// the small cell's training path. training_path must be SU or SD; the two
// data modes must be U or D. For PCR-D the collision (ICR) case is opposite
// directions; for PCR-U it is equal directions.
RegimeLabel classify_regime(SlotMode training_path, SlotMode serving_mode,
                            SlotMode interferer_mode);

// The scheduler output grid: one row per cell (row 0 is the macro), one
// training column followed by n_data data columns, plus per-slot uplink
// power-boost flags.
class FrameMatrix {
 public:
  FrameMatrix(int num_cells, int n_data);

  int num_cells() const { return num_cells_; }
  int n_data() const { return n_data_; }
  int num_cols() const { return n_data_ + 1; }

  SlotMode mode(int cell, int col) const { return modes_[index(cell, col)]; }
  void set_mode(int cell, int col, SlotMode mode) { modes_[index(cell, col)] = mode; }

  bool boosted(int cell, int col) const { return boost_[index(cell, col)] != 0; }
  void set_boost(int cell, int col, bool value) { boost_[index(cell, col)] = value ? 1 : 0; }

  // Checked entry access, row-major over (cell, column).
  std::size_t index(int cell, int col) const {
    if (cell < 0 || cell >= num_cells_ || col < 0 || col > n_data_) {
      throw std::out_of_range("FrameMatrix entry out of range");
    }
    return static_cast<std::size_t>(cell) * num_cols() + col;
  }

  // Full row including the training column.
  std::span<const SlotMode> row(int cell) const {
    return {modes_.data() + static_cast<std::size_t>(cell) * num_cols(),
            static_cast<std::size_t>(num_cols())};
  }
  // Data columns only.
  std::span<const SlotMode> data_row(int cell) const { return row(cell).subspan(1); }

  // Human-readable grid: one line per cell, tokens SU/SD/U/D separated by
  // single spaces, with a '*' suffix on boosted slots.
  std::string grid() const;

 private:
  int num_cells_;
  int n_data_;
  std::vector<SlotMode> modes_;
  std::vector<std::uint8_t> boost_;
};

// Slot-by-slot ICR count for a (macro row, small row) pair of data slots
// under the given training path. This is the definitional scan the closed
// forms are validated against.
int count_icr_collisions(std::span<const SlotMode> macro_data,
                         std::span<const SlotMode> small_data, SlotMode training_path);

// Applies one permutation of the data columns to every row (boost flags
// travel with their slots). Since all rows move together, every per-slot
// regime label survives; this is the hook for deployments that prefer a
// different slot order than the canonical sorted blocks.
FrameMatrix permute_data_columns(const FrameMatrix& frame,
                                 std::span<const int> permutation);

// Checks every FrameMatrix invariant against the per-cell loads and returns
// the list of violations (empty means valid).
std::vector<std::string> validate(const FrameMatrix& frame,
                                  std::span<const deploy::LoadDistribution> loads);

}  // namespace tdsim::frame
