// Copyright 2026 The lossmet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "lossmet/bounds.hpp"
#include "lossmet/fisher.hpp"
#include "lossmet/fockspace.hpp"

namespace lossmet {

enum class Axis { kThermalOccupation, kEta, kSliceX };

enum class Quantity {
  kExactCounting,
  kPurificationBound,
  kSensitivity,
  kSequential,
  kSteadyStateNormalized,
};

std::string quantity_name(Quantity q);   // csv column name
std::string axis_name(Axis a);
Quantity parse_quantity(const std::string& name);
Axis parse_axis(const std::string& name);
InputState parse_input(const std::string& text);  // "vacuum"|"fock:m"|"thermal:mean"

struct Range {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  static Range parse(const std::string& text);  // "a:b:n"
  double at(int i) const;
};

struct SweepSpec {
  Axis axis = Axis::kThermalOccupation;
  Range range;
  Parameter parameter = Parameter::kGamma;
  InputState input;
  std::vector<Quantity> quantities;
  // fixed coordinates; which ones apply depends on the axis
  double eta = 0.9;
  double n_t = 1.0;
  double total_x = 1.0;   // sequential sweeps only
  // truncation target for Fisher evaluations (config/CLI override point)
  double tail_target = kFisherTailTarget;
};

struct SweepRow {
  double axis_value = 0.0;
  double eta = 0.0;
  double n_t = 0.0;
  std::string input_label;
  std::vector<BoundValue> values;  // parallel to spec.quantities
  int dim = 0;
  double dropped_mass = 0.0;
  std::vector<std::string> flags;
};

struct SweepTable {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::map<std::string, std::string> metadata;
};

/// Evaluate one series over the grid. Deterministic: the same spec always
/// produces byte-identical CSV/JSON.
SweepTable run_sweep(const SweepSpec& spec);

/// All quantities available at a single working point.
BoundReport point_query(Parameter parameter, const InputState& input,
                        const ChannelParams& params);

// Canned datasets. fig2: relative damping-rate precision vs bath occupation
// for single-photon and thermal probes at eta in {0.9, 0.7}. fig3:
// occupation precision (raw and steady-state-normalized) for vacuum and
// single-photon probes. figs1: sequential probing of the occupation vs
// slice length at n_t = 1, total_x = 3.
SweepTable run_fig2();
SweepTable run_fig3();
SweepTable run_figs1();

std::string to_csv(const SweepTable& table);
std::string to_json(const SweepTable& table);        // mirrors the CSV schema
std::string report_to_json(const BoundReport& report);

}  // namespace lossmet
