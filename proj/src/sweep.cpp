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

#include "lossmet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "lossmet/channel.hpp"
#include "lossmet/sequential.hpp"

namespace lossmet {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kStationaryMeanWindow = 1e-9;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ' ');
  return text;
}

std::string parameter_name(Parameter p) {
  return p == Parameter::kGamma ? "gamma" : "nt";
}

// a geometric input whose mean already equals the bath occupation is a fixed
// point of the channel; counting statistics then carry no exposure signal
bool stationary_geometric_input(const InputState& input, double n_t) {
  if (input.kind == InputState::Kind::kFock && input.fock_m > 0) return false;
  const double mean = input.mean_occupation();
  const double scale = std::max({1.0, mean, n_t});
  return std::abs(mean - n_t) <= kStationaryMeanWindow * scale;
}

struct ExactCounting {
  BoundValue value;
  int dim = 0;
  double dropped_mass = 0.0;
  bool reliable = true;
  bool one_sided = false;
};

ExactCounting evaluate_exact_counting(const InputState& input,
                                      const ChannelParams& params,
                                      Parameter parameter,
                                      double tail_target) {
  ExactCounting out;
  if (parameter == Parameter::kGamma &&
      stationary_geometric_input(input, params.n_t)) {
    out.value = BoundValue::diverged(
        "stationary thermal input; counting statistics carry no exposure "
        "signal");
    return out;
  }
  if (parameter == Parameter::kThermalOccupation &&
      params.n_t <= kThermalFloor) {
    out.value = BoundValue::diverged(
        "zero-temperature boundary; occupation information diverges through "
        "the vacuum");
    return out;
  }
  try {
    const FisherResult fisher =
        output_counting_fisher(input, params, parameter, tail_target);
    out.dim = fisher.dim_used;
    out.dropped_mass = fisher.dropped_mass;
    out.reliable = fisher.reliable;
    out.one_sided = fisher.one_sided;
    if (!(fisher.value > 0.0) || !std::isfinite(fisher.value)) {
      out.value = BoundValue::diverged("counting information vanished");
      return out;
    }
    const double uncertainty = 1.0 / std::sqrt(fisher.value);
    out.value = BoundValue::finite(parameter == Parameter::kGamma
                                       ? uncertainty / params.x
                                       : uncertainty);
  } catch (const std::exception& e) {
    out.value = BoundValue::diverged(sanitize(e.what()));
  }
  return out;
}

BoundValue evaluate_purification(const InputState& input,
                                 const ChannelParams& params,
                                 Parameter parameter) {
  const double mean = input.mean_occupation();
  return parameter == Parameter::kGamma
             ? damping_bound_finite_temp(mean, params)
             : temperature_bound(mean, params);
}

BoundValue normalized(const BoundValue& base, double n_t) {
  if (base.divergent) return base;
  if (!(n_t > 0.0)) {
    return BoundValue::diverged(
        "steady-state normalization undefined at zero occupation");
  }
  return BoundValue::finite(base.value / std::sqrt(n_t * (n_t + 1.0)));
}

bool wants(const SweepSpec& spec, Quantity q) {
  return std::find(spec.quantities.begin(), spec.quantities.end(), q) !=
         spec.quantities.end();
}

void validate_spec(const SweepSpec& spec) {
  if (spec.quantities.empty()) {
    throw std::invalid_argument("run_sweep: no quantities requested");
  }
  if (spec.range.points < 1) {
    throw std::invalid_argument("run_sweep: range needs at least one point");
  }
  if (wants(spec, Quantity::kSensitivity) &&
      spec.parameter != Parameter::kGamma) {
    throw std::invalid_argument(
        "run_sweep: sensitivity is defined for the damping parameter only");
  }
  if (spec.axis == Axis::kSliceX) {
    for (Quantity q : spec.quantities) {
      if (q != Quantity::kSequential &&
          q != Quantity::kSteadyStateNormalized) {
        throw std::invalid_argument(
            "run_sweep: a slice_x sweep supports only sequential and "
            "steady_state_normalized");
      }
    }
    if (spec.parameter == Parameter::kGamma && spec.n_t != 0.0) {
      throw std::invalid_argument(
          "run_sweep: sequential damping probing requires n_t = 0");
    }
  } else {
    if (wants(spec, Quantity::kSequential)) {
      throw std::invalid_argument(
          "run_sweep: the sequential quantity requires axis slice_x");
    }
    if (spec.axis == Axis::kEta) {
      const double lo = std::min(spec.range.start, spec.range.stop);
      const double hi = std::max(spec.range.start, spec.range.stop);
      if (!(lo > 0.0) || !(hi < 1.0)) {
        throw std::invalid_argument(
            "run_sweep: eta axis must stay strictly inside (0, 1)");
      }
    }
  }
}

SweepRow evaluate_channel_row(const SweepSpec& spec, double axis_value) {
  const double eta =
      spec.axis == Axis::kEta ? axis_value : spec.eta;
  const double n_t =
      spec.axis == Axis::kThermalOccupation ? axis_value : spec.n_t;
  const ChannelParams params = ChannelParams::from_eta(eta, n_t);

  SweepRow row;
  row.axis_value = axis_value;
  row.eta = eta;
  row.n_t = n_t;
  row.input_label = spec.input.label();

  std::optional<BoundValue> exact;
  if (wants(spec, Quantity::kExactCounting) ||
      wants(spec, Quantity::kSteadyStateNormalized)) {
    const ExactCounting ec = evaluate_exact_counting(
        spec.input, params, spec.parameter, spec.tail_target);
    exact = ec.value;
    row.dim = ec.dim;
    row.dropped_mass = ec.dropped_mass;
    if (!ec.reliable) row.flags.push_back("unreliable_fisher");
    if (ec.one_sided) row.flags.push_back("one_sided_derivative");
  }

  for (Quantity q : spec.quantities) {
    BoundValue v;
    switch (q) {
      case Quantity::kExactCounting:
        v = *exact;
        break;
      case Quantity::kPurificationBound:
        v = evaluate_purification(spec.input, params, spec.parameter);
        break;
      case Quantity::kSensitivity:
        v = damping_sensitivity(spec.input.mean_occupation(),
                                spec.input.occupation_variance(), params);
        break;
      case Quantity::kSteadyStateNormalized:
        v = normalized(*exact, n_t);
        break;
      case Quantity::kSequential:
        v = BoundValue::diverged("sequential quantity needs a slice_x axis");
        break;
    }
    if (v.divergent) {
      row.flags.push_back("divergent:" + quantity_name(q) + ":" +
                          sanitize(v.reason));
    }
    row.values.push_back(std::move(v));
  }
  return row;
}

SweepRow evaluate_slice_row(const SweepSpec& spec, double slice_x) {
  SweepRow row;
  row.axis_value = slice_x;
  row.eta = std::numeric_limits<double>::quiet_NaN();
  row.n_t = spec.n_t;
  row.input_label = "fock:1";  // the stream uses single-boson probes
  row.dim = 3;

  std::optional<BoundValue> base;
  try {
    const SequentialSpec seq(spec.total_x, slice_x, spec.n_t);
    const double v = spec.parameter == Parameter::kGamma
                         ? sequential_damping_uncertainty(seq)
                         : sequential_temperature_uncertainty(seq);
    base = BoundValue::finite(v);
    if (2.0 * slice_x * (1.0 + spec.n_t) > kShortTimeValidity) {
      row.flags.push_back("short_time_expansion_invalid");
    }
  } catch (const std::exception& e) {
    base = BoundValue::diverged(sanitize(e.what()));
  }

  for (Quantity q : spec.quantities) {
    BoundValue v = q == Quantity::kSequential ? *base
                                              : normalized(*base, spec.n_t);
    if (v.divergent) {
      row.flags.push_back("divergent:" + quantity_name(q) + ":" +
                          sanitize(v.reason));
    }
    row.values.push_back(std::move(v));
  }
  return row;
}

void fill_metadata(SweepTable& table) {
  const SweepSpec& spec = table.spec;
  table.metadata["schema"] = "lossmet.sweep/1";
  table.metadata["axis"] = axis_name(spec.axis);
  table.metadata["parameter"] = parameter_name(spec.parameter);
  std::string names;
  for (Quantity q : spec.quantities) {
    if (!names.empty()) names += ";";
    names += quantity_name(q);
  }
  table.metadata["quantities"] = names;
  table.metadata["range"] = format_double(spec.range.start) + ":" +
                            format_double(spec.range.stop) + ":" +
                            std::to_string(spec.range.points);
  if (spec.axis == Axis::kSliceX) {
    table.metadata["total_x"] = format_double(spec.total_x);
    table.metadata["n_t"] = format_double(spec.n_t);
  } else {
    if (spec.axis != Axis::kEta) {
      table.metadata["eta"] = format_double(spec.eta);
    }
    if (spec.axis != Axis::kThermalOccupation) {
      table.metadata["n_t"] = format_double(spec.n_t);
    }
    table.metadata["input"] = spec.input.label();
  }
}

SweepTable run_series(const SweepSpec& spec) {
  validate_spec(spec);
  SweepTable table;
  table.spec = spec;
  table.rows.reserve(static_cast<size_t>(spec.range.points));
  for (int i = 0; i < spec.range.points; ++i) {
    const double v = spec.range.at(i);
    table.rows.push_back(spec.axis == Axis::kSliceX
                             ? evaluate_slice_row(spec, v)
                             : evaluate_channel_row(spec, v));
  }
  fill_metadata(table);
  return table;
}

ordered_json bound_to_json(const BoundValue& v) {
  ordered_json j;
  if (v.divergent) {
    j["value"] = nullptr;
    j["divergent"] = true;
    j["reason"] = v.reason;
  } else {
    j["value"] = v.value;
    j["divergent"] = false;
  }
  return j;
}

}  // namespace

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::kExactCounting:
      return "exact_counting";
    case Quantity::kPurificationBound:
      return "purification_bound";
    case Quantity::kSensitivity:
      return "sensitivity";
    case Quantity::kSequential:
      return "sequential";
    case Quantity::kSteadyStateNormalized:
      return "steady_state_normalized";
  }
  throw std::logic_error("quantity_name: unknown quantity");
}

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::kThermalOccupation:
      return "nt";
    case Axis::kEta:
      return "eta";
    case Axis::kSliceX:
      return "slice_x";
  }
  throw std::logic_error("axis_name: unknown axis");
}

Quantity parse_quantity(const std::string& name) {
  if (name == "exact_counting" || name == "exact") {
    return Quantity::kExactCounting;
  }
  if (name == "purification_bound" || name == "bound") {
    return Quantity::kPurificationBound;
  }
  if (name == "sensitivity") return Quantity::kSensitivity;
  if (name == "sequential") return Quantity::kSequential;
  if (name == "steady_state_normalized" || name == "normalized") {
    return Quantity::kSteadyStateNormalized;
  }
  throw std::invalid_argument("unknown quantity '" + name + "'");
}

Axis parse_axis(const std::string& name) {
  if (name == "nt" || name == "n_t" || name == "thermal_occupation") {
    return Axis::kThermalOccupation;
  }
  if (name == "eta") return Axis::kEta;
  if (name == "slice_x" || name == "slice") return Axis::kSliceX;
  throw std::invalid_argument("unknown axis '" + name + "'");
}

InputState parse_input(const std::string& text) {
  if (text == "vacuum") return InputState::vacuum();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    try {
      size_t used = 0;
      if (kind == "fock") {
        const int m = std::stoi(arg, &used);
        if (used == arg.size()) return InputState::fock(m);
      } else if (kind == "thermal") {
        const double mean = std::stod(arg, &used);
        if (used == arg.size()) return InputState::thermal(mean);
      }
    } catch (const std::logic_error&) {
      // falls through to the error below
    }
  }
  throw std::invalid_argument(
      "unknown input '" + text + "'; expected vacuum, fock:M, or thermal:MEAN");
}

Range Range::parse(const std::string& text) {
  std::istringstream in(text);
  std::string a, b, n;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') ||
      !std::getline(in, n) || in.fail()) {
    throw std::invalid_argument("range '" + text + "' is not START:STOP:N");
  }
  Range r;
  try {
    size_t ua = 0, ub = 0, un = 0;
    r.start = std::stod(a, &ua);
    r.stop = std::stod(b, &ub);
    r.points = std::stoi(n, &un);
    if (ua != a.size() || ub != b.size() || un != n.size()) {
      throw std::invalid_argument("trailing characters");
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("range '" + text + "' is not START:STOP:N");
  }
  if (!std::isfinite(r.start) || !std::isfinite(r.stop) || r.points < 1) {
    throw std::invalid_argument("range '" + text + "' is out of domain");
  }
  return r;
}

double Range::at(int i) const {
  if (i < 0 || i >= points) {
    throw std::out_of_range("Range::at: index outside the grid");
  }
  if (points == 1) return start;
  return start + (stop - start) * static_cast<double>(i) /
                     static_cast<double>(points - 1);
}

SweepTable run_sweep(const SweepSpec& spec) { return run_series(spec); }

BoundReport point_query(Parameter parameter, const InputState& input,
                        const ChannelParams& params) {
  const double mean = input.mean_occupation();
  BoundValue purification = parameter == Parameter::kGamma
                                ? damping_bound_finite_temp(mean, params)
                                : temperature_bound(mean, params);
  std::optional<BoundValue> sensitivity;
  if (parameter == Parameter::kGamma) {
    sensitivity =
        damping_sensitivity(mean, input.occupation_variance(), params);
  }
  const ExactCounting ec =
      evaluate_exact_counting(input, params, parameter, kFisherTailTarget);
  return BoundReport{parameter,
                     params,
                     input,
                     std::move(purification),
                     std::move(sensitivity),
                     ec.value,
                     ec.dim,
                     ec.dropped_mass,
                     ec.reliable};
}

SweepTable run_fig2() {
  SweepTable table;
  bool first = true;
  for (double eta : {0.9, 0.7}) {
    for (const InputState& input :
         {InputState::fock(1), InputState::thermal(1.0)}) {
      SweepSpec spec;
      spec.axis = Axis::kThermalOccupation;
      spec.range = Range{0.1, 10.0, 100};
      spec.parameter = Parameter::kGamma;
      spec.input = input;
      spec.quantities = {Quantity::kExactCounting,
                         Quantity::kPurificationBound};
      spec.eta = eta;
      SweepTable series = run_series(spec);
      if (first) {
        table = std::move(series);
        first = false;
      } else {
        table.rows.insert(table.rows.end(), series.rows.begin(),
                          series.rows.end());
      }
    }
  }
  table.metadata["dataset"] = "fig2";
  table.metadata["series"] = "eta in {0.9 0.7} x input in {fock:1 thermal:1}";
  table.metadata.erase("eta");
  table.metadata.erase("input");
  return table;
}

SweepTable run_fig3() {
  SweepTable table;
  bool first = true;
  for (double eta : {0.9, 0.7}) {
    for (const InputState& input :
         {InputState::vacuum(), InputState::fock(1)}) {
      SweepSpec spec;
      spec.axis = Axis::kThermalOccupation;
      spec.range = Range{0.1, 10.0, 100};
      spec.parameter = Parameter::kThermalOccupation;
      spec.input = input;
      spec.quantities = {Quantity::kExactCounting,
                         Quantity::kSteadyStateNormalized};
      spec.eta = eta;
      SweepTable series = run_series(spec);
      if (first) {
        table = std::move(series);
        first = false;
      } else {
        table.rows.insert(table.rows.end(), series.rows.begin(),
                          series.rows.end());
      }
    }
  }
  table.metadata["dataset"] = "fig3";
  table.metadata["series"] = "eta in {0.9 0.7} x input in {vacuum fock:1}";
  table.metadata.erase("eta");
  table.metadata.erase("input");
  return table;
}

SweepTable run_figs1() {
  SweepSpec spec;
  spec.axis = Axis::kSliceX;
  spec.range = Range{0.001, 0.02, 100};
  spec.parameter = Parameter::kThermalOccupation;
  spec.quantities = {Quantity::kSequential,
                     Quantity::kSteadyStateNormalized};
  spec.n_t = 1.0;
  spec.total_x = 3.0;
  SweepTable table = run_series(spec);
  table.metadata["dataset"] = "figs1";
  return table;
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "axis,axis_value,eta,n_t,input,parameter,total_x";
  for (Quantity q : table.spec.quantities) out << "," << quantity_name(q);
  out << ",dim,dropped_mass,flags\n";

  const std::string axis = axis_name(table.spec.axis);
  const std::string parameter = parameter_name(table.spec.parameter);
  const bool slice_axis = table.spec.axis == Axis::kSliceX;
  for (const SweepRow& row : table.rows) {
    out << axis << "," << format_double(row.axis_value) << ",";
    if (!std::isnan(row.eta)) out << format_double(row.eta);
    out << "," << format_double(row.n_t) << "," << row.input_label << ","
        << parameter << ",";
    if (slice_axis) out << format_double(table.spec.total_x);
    for (const BoundValue& v : row.values) {
      out << ",";
      if (!v.divergent) out << format_double(v.value);
    }
    out << "," << row.dim << "," << format_double(row.dropped_mass) << ",";
    std::string flags;
    for (const std::string& f : row.flags) {
      if (!flags.empty()) flags += "|";
      flags += f;
    }
    out << flags << "\n";
  }
  return out.str();
}

std::string to_json(const SweepTable& table) {
  ordered_json j;
  j["schema"] = "lossmet.sweep/1";
  for (const auto& [key, value] : table.metadata) {
    if (key != "schema") j["metadata"][key] = value;
  }
  j["columns"] = ordered_json::array();
  for (const std::string& c :
       {std::string("axis_value"), std::string("eta"), std::string("n_t"),
        std::string("input"), std::string("total_x")}) {
    j["columns"].push_back(c);
  }
  for (Quantity q : table.spec.quantities) {
    j["columns"].push_back(quantity_name(q));
  }
  const bool slice_axis = table.spec.axis == Axis::kSliceX;
  j["rows"] = ordered_json::array();
  for (const SweepRow& row : table.rows) {
    ordered_json r;
    r["axis_value"] = row.axis_value;
    if (std::isnan(row.eta)) {
      r["eta"] = nullptr;
    } else {
      r["eta"] = row.eta;
    }
    r["n_t"] = row.n_t;
    r["input"] = row.input_label;
    if (slice_axis) {
      r["total_x"] = table.spec.total_x;
    } else {
      r["total_x"] = nullptr;
    }
    for (size_t i = 0; i < table.spec.quantities.size(); ++i) {
      const BoundValue& v = row.values[i];
      const std::string name = quantity_name(table.spec.quantities[i]);
      if (v.divergent) {
        r[name] = nullptr;
      } else {
        r[name] = v.value;
      }
    }
    r["dim"] = row.dim;
    r["dropped_mass"] = row.dropped_mass;
    r["flags"] = row.flags;
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string report_to_json(const BoundReport& report) {
  ordered_json j;
  j["schema"] = "lossmet.point/1";
  j["parameter"] = parameter_name(report.parameter);
  j["x"] = report.params.x;
  j["eta"] = report.params.eta();
  j["n_t"] = report.params.n_t;
  j["input"] = report.input.label();
  j["purification_bound"] = bound_to_json(report.purification_bound);
  if (report.sensitivity_bound) {
    j["sensitivity"] = bound_to_json(*report.sensitivity_bound);
  }
  if (report.exact_counting) {
    j["exact_counting"] = bound_to_json(*report.exact_counting);
  }
  j["fisher"]["dim"] = report.fisher_dim;
  j["fisher"]["dropped_mass"] = report.fisher_dropped_mass;
  j["fisher"]["reliable"] = report.fisher_reliable;
  return j.dump(2) + "\n";
}

}  // namespace lossmet
