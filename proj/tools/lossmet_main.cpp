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

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lossmet/bounds.hpp"
#include "lossmet/fisher.hpp"
#include "lossmet/sweep.hpp"

namespace {

// data goes to stdout or --out; diagnostics go to stderr
void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + out_path + "'");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing output file '" + out_path + "'");
  }
  std::cerr << "wrote " << out_path << "\n";
}

lossmet::Parameter parse_parameter(const std::string& name) {
  if (name == "gamma" || name == "damping") return lossmet::Parameter::kGamma;
  if (name == "nt" || name == "n_t" || name == "occupation") {
    return lossmet::Parameter::kThermalOccupation;
  }
  throw CLI::ValidationError("--parameter", "expected gamma or nt, got '" +
                                                name + "'");
}

std::string render_table(const lossmet::SweepTable& table,
                         const std::string& format) {
  if (format == "csv") return lossmet::to_csv(table);
  if (format == "json") return lossmet::to_json(table);
  throw CLI::ValidationError("--format", "expected csv or json, got '" +
                                             format + "'");
}

void emit_table(const lossmet::SweepTable& table, const std::string& format,
                const std::string& out_path) {
  const std::string text = render_table(table, format);
  std::cerr << table.rows.size() << " rows\n";
  write_output(text, out_path);
}

struct PointOptions {
  std::string parameter = "gamma";
  std::string input = "fock:1";
  double eta = 0.9;
  double x = 0.0;
  bool has_x = false;
  double n_t = 1.0;
  std::string out;
};

struct SweepOptions {
  std::string axis;
  std::string range;
  std::string parameter = "gamma";
  std::string input = "fock:1";
  std::vector<std::string> quantities;
  double eta = 0.9;
  double n_t = 1.0;
  double total_x = 1.0;
  double tail_target = lossmet::kFisherTailTarget;
  std::string format = "csv";
  std::string out;
};

struct FigOptions {
  std::string format = "csv";
  std::string out;
};

void run_point(const PointOptions& opt) {
  const lossmet::Parameter parameter = parse_parameter(opt.parameter);
  const lossmet::InputState input = lossmet::parse_input(opt.input);
  const lossmet::ChannelParams params =
      opt.has_x ? lossmet::ChannelParams(opt.x, opt.n_t)
                : lossmet::ChannelParams::from_eta(opt.eta, opt.n_t);
  const lossmet::BoundReport report =
      lossmet::point_query(parameter, input, params);
  write_output(lossmet::report_to_json(report), opt.out);
}

void run_sweep_command(const SweepOptions& opt) {
  lossmet::SweepSpec spec;
  spec.axis = lossmet::parse_axis(opt.axis);
  spec.range = lossmet::Range::parse(opt.range);
  spec.parameter = parse_parameter(opt.parameter);
  spec.input = lossmet::parse_input(opt.input);
  spec.eta = opt.eta;
  spec.n_t = opt.n_t;
  spec.total_x = opt.total_x;
  spec.tail_target = opt.tail_target;
  if (opt.quantities.empty()) {
    spec.quantities =
        spec.axis == lossmet::Axis::kSliceX
            ? std::vector<lossmet::Quantity>{
                  lossmet::Quantity::kSequential,
                  lossmet::Quantity::kSteadyStateNormalized}
            : std::vector<lossmet::Quantity>{
                  lossmet::Quantity::kExactCounting,
                  lossmet::Quantity::kPurificationBound};
  } else {
    for (const std::string& name : opt.quantities) {
      spec.quantities.push_back(lossmet::parse_quantity(name));
    }
  }
  emit_table(lossmet::run_sweep(spec), opt.format, opt.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lossmet: precision limits for estimating the damping rate and bath "
      "occupation of a lossy bosonic channel from photon counting"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "INI file of default option values; explicit flags win");

  PointOptions point;
  CLI::App* point_cmd = app.add_subcommand(
      "point", "all available quantities at one working point (JSON)");
  point_cmd->add_option("--parameter", point.parameter,
                        "estimated parameter: gamma or nt");
  point_cmd->add_option("--input", point.input,
                        "probe state: vacuum, fock:M, or thermal:MEAN");
  CLI::Option* point_eta = point_cmd->add_option(
      "--eta", point.eta, "transmissivity in (0,1)");
  CLI::Option* point_x =
      point_cmd->add_option("--x", point.x, "exposure gamma*t > 0");
  point_x->excludes(point_eta);
  point_cmd->add_option("--nt", point.n_t, "bath occupation >= 0");
  point_cmd->add_option("--out", point.out, "output file (default stdout)");

  SweepOptions sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "evaluate quantities over a grid");
  sweep_cmd->add_option("--axis", sweep.axis, "grid axis: nt, eta, or slice_x")
      ->required();
  sweep_cmd->add_option("--range", sweep.range, "grid as START:STOP:N")
      ->required();
  sweep_cmd->add_option("--parameter", sweep.parameter,
                        "estimated parameter: gamma or nt");
  sweep_cmd->add_option("--input", sweep.input,
                        "probe state: vacuum, fock:M, or thermal:MEAN");
  sweep_cmd
      ->add_option("--quantities", sweep.quantities,
                   "comma-separated list: exact_counting, purification_bound, "
                   "sensitivity, sequential, steady_state_normalized")
      ->delimiter(',');
  sweep_cmd->add_option("--eta", sweep.eta,
                        "fixed transmissivity (non-eta axes)");
  sweep_cmd->add_option("--nt", sweep.n_t, "fixed bath occupation");
  sweep_cmd->add_option("--total-x", sweep.total_x,
                        "total exposure for slice_x sweeps");
  sweep_cmd->add_option("--tail-target", sweep.tail_target,
                        "truncation tail target for Fisher evaluations");
  sweep_cmd->add_option("--format", sweep.format, "csv or json");
  sweep_cmd->add_option("--out", sweep.out, "output file (default stdout)");

  FigOptions fig2, fig3, figs1;
  CLI::App* fig2_cmd = app.add_subcommand(
      "fig2", "canned dataset: damping-rate precision vs bath occupation");
  fig2_cmd->add_option("--format", fig2.format, "csv or json");
  fig2_cmd->add_option("--out", fig2.out, "output file (default stdout)");
  CLI::App* fig3_cmd = app.add_subcommand(
      "fig3", "canned dataset: occupation precision vs bath occupation");
  fig3_cmd->add_option("--format", fig3.format, "csv or json");
  fig3_cmd->add_option("--out", fig3.out, "output file (default stdout)");
  CLI::App* figs1_cmd = app.add_subcommand(
      "figS1", "canned dataset: sequential probing vs slice length");
  figs1_cmd->alias("figs1");
  figs1_cmd->add_option("--format", figs1.format, "csv or json");
  figs1_cmd->add_option("--out", figs1.out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  point.has_x = point_x->count() > 0;

  try {
    if (point_cmd->parsed()) {
      run_point(point);
    } else if (sweep_cmd->parsed()) {
      run_sweep_command(sweep);
    } else if (fig2_cmd->parsed()) {
      emit_table(lossmet::run_fig2(), fig2.format, fig2.out);
    } else if (fig3_cmd->parsed()) {
      emit_table(lossmet::run_fig3(), fig3.format, fig3.out);
    } else if (figs1_cmd->parsed()) {
      emit_table(lossmet::run_figs1(), figs1.format, figs1.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
