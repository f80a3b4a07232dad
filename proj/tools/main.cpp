// Copyright 2026 The loqgate authors
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

// Command-line front end. All numerics go through the loqgate C API; this
// file only handles flags, config files, directory layout and reporting.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "loqgate/loqgate.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void api_fail(const std::string& context) {
  throw UsageError(context + ": " + loq_last_error());
}

void check(loq_status st, const std::string& context) {
  if (st != LOQ_OK) api_fail(context);
}

struct StringGuard {
  char* ptr = nullptr;
  ~StringGuard() { loq_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

using ProblemPtr = std::unique_ptr<loq_problem, decltype(&loq_problem_free)>;
using PointPtr = std::unique_ptr<loq_point, decltype(&loq_point_free)>;
using CurvePtr = std::unique_ptr<loq_curve, decltype(&loq_curve_free)>;
using DecompPtr = std::unique_ptr<loq_decomposition, decltype(&loq_decomposition_free)>;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path.string());
  out << content;
  if (!out) throw UsageError("short write to " + path.string());
}

std::vector<int> parse_occupation(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("cannot parse " + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(what + " must not be empty");
  return out;
}

struct Schedule {
  double min = 0.1;
  double max = 5.0;
  int count = 30;
  bool log_spacing = true;
};

Schedule parse_schedule(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw UsageError("--schedule expects min:max:count:{log|lin}");
  Schedule s;
  try {
    s.min = std::stod(parts[0]);
    s.max = std::stod(parts[1]);
    s.count = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("cannot parse schedule '" + text + "'");
  }
  if (parts[3] == "log")
    s.log_spacing = true;
  else if (parts[3] == "lin")
    s.log_spacing = false;
  else
    throw UsageError("schedule spacing must be 'log' or 'lin'");
  return s;
}

// Resolved settings of one run; serialized to config.json so a run is
// reproducible from that file alone.
struct RunConfig {
  std::string target = "cz";
  double target_angle = 0.0;
  std::string target_file;
  std::vector<double> target_matrix;  // interleaved, filled from target_file
  int n_qubits = 2;
  std::vector<int> ancilla_in = {1, 1};
  std::vector<int> ancilla_pattern = {1, 1};
  std::string ansatz = "knill";
  std::vector<int> passive_modes = {1, 3};
  double epsilon = 1e-6;
  Schedule schedule;
  int restarts = 100;
  int max_iterations = 400;
  double gradient_step = 1e-6;
  double convergence_tol = 1e-2;
  unsigned long long seed = 12345;
  int threads = 1;
  int terms = 2;
  std::string out_dir = "run";
};

void apply_config_file(RunConfig& rc, const fs::path& path) {
  ordered_json node;
  try {
    node = ordered_json::parse(read_file(path));
  } catch (const ordered_json::exception& e) {
    throw UsageError("config parse failure: " + std::string(e.what()));
  }
  if (!node.is_object()) throw UsageError("config must be a JSON object");
  try {
    if (node.contains("target")) rc.target = node["target"].get<std::string>();
    if (node.contains("target_angle")) rc.target_angle = node["target_angle"].get<double>();
    if (node.contains("target_file")) {
      if (!node["target_file"].is_null()) rc.target_file = node["target_file"].get<std::string>();
    }
    if (node.contains("n_qubits")) rc.n_qubits = node["n_qubits"].get<int>();
    if (node.contains("ancilla_in")) rc.ancilla_in = node["ancilla_in"].get<std::vector<int>>();
    if (node.contains("ancilla_pattern"))
      rc.ancilla_pattern = node["ancilla_pattern"].get<std::vector<int>>();
    if (node.contains("ansatz")) rc.ansatz = node["ansatz"].get<std::string>();
    if (node.contains("passive_modes"))
      rc.passive_modes = node["passive_modes"].get<std::vector<int>>();
    if (node.contains("epsilon")) rc.epsilon = node["epsilon"].get<double>();
    if (node.contains("schedule")) {
      const ordered_json& s = node["schedule"];
      if (s.is_string()) {
        rc.schedule = parse_schedule(s.get<std::string>());
      } else {
        if (s.contains("min")) rc.schedule.min = s["min"].get<double>();
        if (s.contains("max")) rc.schedule.max = s["max"].get<double>();
        if (s.contains("count")) rc.schedule.count = s["count"].get<int>();
        if (s.contains("spacing"))
          rc.schedule.log_spacing = (s["spacing"].get<std::string>() == "log");
      }
    }
    if (node.contains("restarts")) rc.restarts = node["restarts"].get<int>();
    if (node.contains("max_iterations")) rc.max_iterations = node["max_iterations"].get<int>();
    if (node.contains("gradient_step")) rc.gradient_step = node["gradient_step"].get<double>();
    if (node.contains("convergence_tol"))
      rc.convergence_tol = node["convergence_tol"].get<double>();
    if (node.contains("seed")) rc.seed = node["seed"].get<unsigned long long>();
    if (node.contains("threads")) rc.threads = node["threads"].get<int>();
    if (node.contains("terms")) rc.terms = node["terms"].get<int>();
    if (node.contains("out")) rc.out_dir = node["out"].get<std::string>();
  } catch (const ordered_json::exception& e) {
    throw UsageError("config field has the wrong type: " + std::string(e.what()));
  }
}

void load_target_file(RunConfig& rc) {
  if (rc.target_file.empty()) return;
  ordered_json node;
  try {
    node = ordered_json::parse(read_file(rc.target_file));
  } catch (const ordered_json::exception& e) {
    throw UsageError("target file parse failure: " + std::string(e.what()));
  }
  if (!node.is_array()) throw UsageError("target file must hold a nested matrix array");
  size_t dim = node.size();
  size_t expect = size_t{1} << rc.n_qubits;
  if (dim != expect)
    throw UsageError("target matrix must have side " + std::to_string(expect));
  rc.target_matrix.assign(2 * dim * dim, 0.0);
  for (size_t r = 0; r < dim; ++r) {
    const ordered_json& row = node.at(r);
    if (!row.is_array() || row.size() != dim)
      throw UsageError("target matrix rows must have side " + std::to_string(expect));
    for (size_t c = 0; c < dim; ++c) {
      const ordered_json& cell = row.at(c);
      if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
          !cell.at(1).is_number())
        throw UsageError("target matrix entries must be [re, im] pairs");
      rc.target_matrix[2 * (r * dim + c)] = cell.at(0).get<double>();
      rc.target_matrix[2 * (r * dim + c) + 1] = cell.at(1).get<double>();
    }
  }
  rc.target = "user";
}

ProblemPtr make_problem(const RunConfig& rc) {
  loq_problem_spec spec{};
  spec.target = rc.target.c_str();
  spec.target_angle = rc.target_angle;
  spec.target_matrix = rc.target_matrix.empty() ? nullptr : rc.target_matrix.data();
  spec.n_qubits = rc.n_qubits;
  spec.ancilla_in = rc.ancilla_in.data();
  spec.ancilla_pattern = rc.ancilla_pattern.data();
  spec.n_ancilla_modes = static_cast<int>(rc.ancilla_in.size());
  spec.ansatz = rc.ansatz.c_str();
  spec.passive_modes = rc.passive_modes.data();
  spec.n_passive_modes = static_cast<int>(rc.passive_modes.size());
  loq_problem* raw = nullptr;
  check(loq_problem_create(&spec, &raw), "problem setup");
  return ProblemPtr(raw, loq_problem_free);
}

loq_config make_config(const RunConfig& rc, double epsilon) {
  loq_config c;
  loq_config_init(&c);
  c.epsilon = epsilon;
  c.restarts = rc.restarts;
  c.max_iterations = rc.max_iterations;
  c.gradient_step = rc.gradient_step;
  c.convergence_tol = rc.convergence_tol;
  c.seed = rc.seed;
  c.threads = rc.threads;
  return c;
}

ordered_json config_json(const RunConfig& rc, const std::string& command) {
  ordered_json j;
  j["command"] = command;
  j["target"] = rc.target;
  j["target_angle"] = rc.target_angle;
  if (rc.target_file.empty())
    j["target_file"] = nullptr;
  else
    j["target_file"] = rc.target_file;
  j["n_qubits"] = rc.n_qubits;
  j["ancilla_in"] = rc.ancilla_in;
  j["ancilla_pattern"] = rc.ancilla_pattern;
  j["ansatz"] = rc.ansatz;
  j["passive_modes"] = rc.passive_modes;
  j["epsilon"] = rc.epsilon;
  j["schedule"] = {{"min", rc.schedule.min},
                   {"max", rc.schedule.max},
                   {"count", rc.schedule.count},
                   {"spacing", rc.schedule.log_spacing ? "log" : "lin"}};
  j["restarts"] = rc.restarts;
  j["max_iterations"] = rc.max_iterations;
  j["gradient_step"] = rc.gradient_step;
  j["convergence_tol"] = rc.convergence_tol;
  j["seed"] = rc.seed;
  j["threads"] = rc.threads;
  j["terms"] = rc.terms;
  j["out"] = rc.out_dir;
  return j;
}

std::string point_name(size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03zu.json", index);
  return buf;
}

std::string point_json(const loq_point* pt, const loq_problem* prob) {
  StringGuard s;
  check(loq_point_to_json(pt, prob, &s.ptr), "point serialization");
  return s.str();
}

PointPtr parse_point_file(const fs::path& path, ProblemPtr* problem_out) {
  std::string text = read_file(path);
  loq_point* pt = nullptr;
  loq_problem* prob = nullptr;
  loq_status st = loq_point_parse(text.c_str(), &pt, problem_out ? &prob : nullptr);
  if (st != LOQ_OK) throw UsageError(path.string() + ": " + loq_last_error());
  if (problem_out) *problem_out = ProblemPtr(prob, loq_problem_free);
  return PointPtr(pt, loq_point_free);
}

// ---- subcommands ----

int cmd_optimize(const RunConfig& rc) {
  ProblemPtr problem = make_problem(rc);
  loq_config cfg = make_config(rc, rc.epsilon);
  loq_point* raw = nullptr;
  check(loq_optimize(problem.get(), &cfg, nullptr, &raw), "optimize");
  PointPtr point(raw, loq_point_free);

  fs::path out(rc.out_dir);
  write_file(out / "config.json", config_json(rc, "optimize").dump(2) + "\n");
  write_file(out / "points" / point_name(0), point_json(point.get(), problem.get()));

  bool converged = loq_point_converged(point.get()) != 0;
  std::printf("epsilon     %.6g\n", loq_point_epsilon(point.get()));
  std::printf("delta       %.6g\n", loq_point_delta(point.get()));
  std::printf("success     %.9g\n", loq_point_success(point.get()));
  std::printf("objective   %.9g\n", loq_point_objective(point.get()));
  std::printf("converged   %s\n", converged ? "yes" : "no");
  std::printf("wrote %s\n", (out / "points" / point_name(0)).c_str());
  if (!converged) {
    std::fprintf(stderr, "warning: gradient norm above tolerance at max iterations\n");
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_trace(const RunConfig& rc, bool resume) {
  ProblemPtr problem = make_problem(rc);
  std::vector<double> schedule(static_cast<size_t>(std::max(rc.schedule.count, 1)));
  check(loq_schedule_make(rc.schedule.min, rc.schedule.max, rc.schedule.count,
                          rc.schedule.log_spacing ? 1 : 0, schedule.data()),
        "schedule");

  fs::path out(rc.out_dir);
  CurvePtr resume_curve(nullptr, loq_curve_free);
  if (resume && fs::is_directory(out / "points")) {
    loq_curve* raw = nullptr;
    check(loq_curve_create(&raw), "resume curve");
    resume_curve = CurvePtr(raw, loq_curve_free);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(out / "points"))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      PointPtr pt = parse_point_file(f, nullptr);
      check(loq_curve_append(resume_curve.get(), pt.get()), "resume curve");
    }
    std::printf("resuming with %zu stored points\n", loq_curve_size(resume_curve.get()));
  }

  loq_config cfg = make_config(rc, schedule.front());
  loq_curve* raw = nullptr;
  loq_status st = loq_trace(problem.get(), &cfg, schedule.data(),
                            static_cast<int>(schedule.size()), resume_curve.get(), &raw);
  if (st == LOQ_ERR_CONTINUATION) throw NumericError(loq_last_error());
  check(st, "trace");
  CurvePtr curve(raw, loq_curve_free);

  write_file(out / "config.json", config_json(rc, "trace").dump(2) + "\n");
  for (size_t k = 0; k < loq_curve_size(curve.get()); ++k)
    write_file(out / "points" / point_name(k),
               point_json(loq_curve_point(curve.get(), k), problem.get()));
  StringGuard csv;
  check(loq_curve_to_csv(curve.get(), &csv.ptr), "curve serialization");
  write_file(out / "curve.csv", csv.str());

  StringGuard warnings;
  check(loq_curve_warnings(curve.get(), &warnings.ptr), "warnings");
  std::string warn = warnings.str();
  if (!warn.empty()) std::fprintf(stderr, "%s", warn.c_str());

  size_t n_converged = 0;
  for (size_t k = 0; k < loq_curve_size(curve.get()); ++k)
    if (loq_point_converged(loq_curve_point(curve.get(), k))) ++n_converged;
  std::printf("traced %zu points (%zu converged), wrote %s\n", loq_curve_size(curve.get()),
              n_converged, (out / "curve.csv").c_str());
  if (n_converged < loq_curve_size(curve.get())) return kExitNumeric;
  return kExitOk;
}

int cmd_fit(const RunConfig& rc, const std::string& input) {
  fs::path path(input);
  if (fs::is_directory(path)) path /= "curve.csv";
  std::string csv = read_file(path);
  loq_curve* raw = nullptr;
  check(loq_curve_parse_csv(csv.c_str(), &raw), path.string());
  CurvePtr curve(raw, loq_curve_free);

  loq_fit_result fit{};
  check(loq_fit(curve.get(), rc.terms, 0, &fit), "fit");
  StringGuard json;
  check(loq_fit_to_json(&fit, &json.ptr), "fit serialization");

  fs::path out = fs::is_directory(input) ? fs::path(input) / "fit.json"
                                         : fs::path(rc.out_dir) / "fit.json";
  write_file(out, json.str());
  std::printf("S0           %.9g\n", fit.s0);
  std::printf("S1           %.9g\n", fit.s1);
  if (fit.has_s2) std::printf("S2           %.9g\n", fit.s2);
  std::printf("S1/S0        %.9g\n", fit.ratio);
  std::printf("residual rms %.3g (over %d points)\n", fit.residual_rms, fit.n_used);
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

DecompPtr decompose_point(const loq_point* pt) {
  int n = loq_point_n_modes(pt);
  std::vector<double> u(static_cast<size_t>(2 * n * n));
  check(loq_point_matrix(pt, u.data()), "point matrix");
  loq_decomposition* raw = nullptr;
  check(loq_decompose(u.data(), n, &raw), "decompose");
  return DecompPtr(raw, loq_decomposition_free);
}

std::string circuit_json(const loq_decomposition* d) {
  StringGuard s;
  check(loq_circuit_to_json(d, &s.ptr), "circuit serialization");
  return s.str();
}

int cmd_decompose(const std::string& input, const std::string& out_override) {
  fs::path in(input);
  if (fs::is_directory(in)) {
    fs::path points_dir = in / "points";
    if (!fs::is_directory(points_dir))
      throw UsageError("no points/ directory under " + in.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(points_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no point files under " + points_dir.string());

    loq_curve* raw_curve = nullptr;
    check(loq_curve_create(&raw_curve), "curve");
    CurvePtr curve(raw_curve, loq_curve_free);
    ProblemPtr problem(nullptr, loq_problem_free);
    for (const fs::path& f : files) {
      ProblemPtr prob(nullptr, loq_problem_free);
      PointPtr pt = parse_point_file(f, &prob);
      if (!problem) problem = std::move(prob);
      DecompPtr d = decompose_point(pt.get());
      write_file(in / "circuits" / f.filename(), circuit_json(d.get()));
      check(loq_curve_append(curve.get(), pt.get()), "curve");
    }
    StringGuard report;
    check(loq_angle_report(curve.get(), problem.get(), &report.ptr), "angle report");
    write_file(in / "angles.json", report.str());
    std::printf("decomposed %zu points, wrote %s and %s\n", files.size(),
                (in / "circuits").c_str(), (in / "angles.json").c_str());
    return kExitOk;
  }

  // Single file: a stored point, or a bare matrix.
  std::string text = read_file(in);
  loq_point* raw_pt = nullptr;
  loq_problem* raw_prob = nullptr;
  DecompPtr d(nullptr, loq_decomposition_free);
  int n_rot = 0;
  if (loq_point_parse(text.c_str(), &raw_pt, &raw_prob) == LOQ_OK) {
    PointPtr pt(raw_pt, loq_point_free);
    ProblemPtr prob(raw_prob, loq_problem_free);
    d = decompose_point(pt.get());
  } else {
    ordered_json node;
    try {
      node = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
      throw UsageError(in.string() + ": " + e.what());
    }
    if (!node.is_array()) throw UsageError(in.string() + ": expected a point or a matrix");
    size_t n = node.size();
    std::vector<double> u(2 * n * n);
    for (size_t r = 0; r < n; ++r) {
      const ordered_json& row = node.at(r);
      if (!row.is_array() || row.size() != n)
        throw UsageError(in.string() + ": matrix must be square");
      for (size_t c = 0; c < n; ++c) {
        const ordered_json& cell = row.at(c);
        if (!cell.is_array() || cell.size() != 2)
          throw UsageError(in.string() + ": entries must be [re, im] pairs");
        u[2 * (r * n + c)] = cell.at(0).get<double>();
        u[2 * (r * n + c) + 1] = cell.at(1).get<double>();
      }
    }
    loq_decomposition* raw = nullptr;
    check(loq_decompose(u.data(), static_cast<int>(n), &raw), "decompose");
    d = DecompPtr(raw, loq_decomposition_free);
  }

  n_rot = loq_decomposition_n_rotations(d.get());
  fs::path out = out_override.empty() ? in.parent_path() / (in.stem().string() + ".circuit.json")
                                      : fs::path(out_override);
  write_file(out, circuit_json(d.get()));
  std::printf("%d beamsplitter rotations, %d output phases\n", n_rot,
              loq_decomposition_n_modes(d.get()));
  for (int k = 0; k < n_rot; ++k) {
    int i = 0, j = 0;
    double omega = 0.0, phi = 0.0;
    check(loq_decomposition_rotation(d.get(), k, &i, &j, &omega, &phi), "rotation");
    std::printf("  bs (%d,%d)  omega % .9f  phi % .9f\n", i, j, omega, phi);
  }
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

int verify_point_file(const fs::path& path, double tol, bool& ok) {
  ProblemPtr prob(nullptr, loq_problem_free);
  PointPtr pt = parse_point_file(path, &prob);
  double f = 0.0, s = 0.0;
  check(loq_point_metrics(prob.get(), pt.get(), &f, &s), path.string());
  double d_stored = loq_point_delta(pt.get());
  double s_stored = loq_point_success(pt.get());
  double err_delta = std::abs((1.0 - f) - d_stored);
  double err_s = std::abs(s - s_stored);

  int n = loq_point_n_modes(pt.get());
  std::vector<double> u(static_cast<size_t>(2 * n * n));
  check(loq_point_matrix(pt.get(), u.data()), path.string());
  double unit_err = 0.0;
  check(loq_unitarity_error(u.data(), n, &unit_err), path.string());

  bool point_ok = err_delta <= tol && err_s <= tol && unit_err <= 1e-10;
  std::printf("%s: |d_delta| %.3g, |d_success| %.3g, unitarity %.3g %s\n", path.c_str(),
              err_delta, err_s, unit_err, point_ok ? "[ok]" : "[MISMATCH]");
  ok = ok && point_ok;
  return kExitOk;
}

int verify_circuit_file(const fs::path& path, const fs::path& sibling_point, bool& ok) {
  std::string text = read_file(path);
  loq_decomposition* raw = nullptr;
  loq_status st = loq_circuit_parse(text.c_str(), &raw);
  if (st != LOQ_OK) throw UsageError(path.string() + ": " + loq_last_error());
  DecompPtr d(raw, loq_decomposition_free);

  int n = loq_decomposition_n_modes(d.get());
  std::vector<double> rebuilt(static_cast<size_t>(2 * n * n));
  check(loq_reconstruct(d.get(), rebuilt.data()), path.string());
  double unit_err = 0.0;
  check(loq_unitarity_error(rebuilt.data(), n, &unit_err), path.string());

  double recon_err = -1.0;
  if (!sibling_point.empty() && fs::exists(sibling_point)) {
    PointPtr pt = parse_point_file(sibling_point, nullptr);
    if (loq_point_n_modes(pt.get()) == n) {
      std::vector<double> u(static_cast<size_t>(2 * n * n));
      check(loq_point_matrix(pt.get(), u.data()), sibling_point.string());
      recon_err = 0.0;
      for (size_t k = 0; k < u.size(); k += 2) {
        double dr = u[k] - rebuilt[k];
        double di = u[k + 1] - rebuilt[k + 1];
        recon_err = std::max(recon_err, std::hypot(dr, di));
      }
    }
  }

  bool circuit_ok = unit_err <= 1e-10 && (recon_err < 0.0 || recon_err < 1e-10);
  if (recon_err >= 0.0)
    std::printf("%s: unitarity %.3g, reconstruction vs point %.3g %s\n", path.c_str(), unit_err,
                recon_err, circuit_ok ? "[ok]" : "[MISMATCH]");
  else
    std::printf("%s: unitarity %.3g %s\n", path.c_str(), unit_err,
                circuit_ok ? "[ok]" : "[MISMATCH]");
  ok = ok && circuit_ok;
  return kExitOk;
}

int cmd_verify(const std::string& input) {
  fs::path in(input);
  bool ok = true;
  size_t checked = 0;

  if (fs::is_directory(in)) {
    std::vector<fs::path> point_files, circuit_files;
    if (fs::is_directory(in / "points"))
      for (const auto& e : fs::directory_iterator(in / "points"))
        if (e.is_regular_file() && e.path().extension() == ".json")
          point_files.push_back(e.path());
    if (fs::is_directory(in / "circuits"))
      for (const auto& e : fs::directory_iterator(in / "circuits"))
        if (e.is_regular_file() && e.path().extension() == ".json")
          circuit_files.push_back(e.path());
    std::sort(point_files.begin(), point_files.end());
    std::sort(circuit_files.begin(), circuit_files.end());

    for (const fs::path& f : point_files) {
      verify_point_file(f, 1e-8, ok);
      ++checked;
    }
    for (const fs::path& f : circuit_files) {
      verify_circuit_file(f, in / "points" / f.filename(), ok);
      ++checked;
    }
    if (fs::exists(in / "curve.csv")) {
      loq_curve* raw = nullptr;
      check(loq_curve_parse_csv(read_file(in / "curve.csv").c_str(), &raw), "curve.csv");
      CurvePtr curve(raw, loq_curve_free);
      std::printf("%s: %zu rows parsed [ok]\n", (in / "curve.csv").c_str(),
                  loq_curve_size(curve.get()));
      ++checked;
    }
  } else if (fs::exists(in)) {
    std::string text = read_file(in);
    loq_point* raw_pt = nullptr;
    if (loq_point_parse(text.c_str(), &raw_pt, nullptr) == LOQ_OK) {
      loq_point_free(raw_pt);
      verify_point_file(in, 1e-8, ok);
    } else {
      verify_circuit_file(in, fs::path(), ok);
    }
    ++checked;
  } else {
    throw UsageError("no such file or directory: " + input);
  }

  if (checked == 0) throw UsageError("nothing to verify under " + input);
  if (!ok) {
    std::fprintf(stderr, "verification FAILED\n");
    return kExitNumeric;
  }
  std::printf("verified %zu artifacts\n", checked);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loqgate: measurement-assisted linear-optical gate optimizer"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string config_path, ancilla_in_text, ancilla_pattern_text, schedule_text;
  std::string fit_input, decompose_input, verify_input, decompose_out;
  bool resume = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file (flags win over file)");
    cmd->add_option("--target", rc.target, "built-in target gate: cz, cnot, cs");
    cmd->add_option("--target-angle", rc.target_angle, "phase for cs, radians");
    cmd->add_option("--target-file", rc.target_file, "JSON file with a 4x4 unitary");
    cmd->add_option("--ancilla-in", ancilla_in_text, "ancilla input photons, e.g. 1,1");
    cmd->add_option("--ancilla-pattern", ancilla_pattern_text, "heralding pattern, e.g. 1,1");
    cmd->add_option("--ansatz", rc.ansatz, "full or knill")
        ->check(CLI::IsMember({"full", "knill"}));
    cmd->add_option("--restarts", rc.restarts, "multistart budget");
    cmd->add_option("--max-iterations", rc.max_iterations, "ascent iterations per stage");
    cmd->add_option("--gradient-step", rc.gradient_step, "finite-difference step");
    cmd->add_option("--convergence-tol", rc.convergence_tol, "gradient norm tolerance");
    cmd->add_option("--seed", rc.seed, "RNG seed");
    cmd->add_option("--threads", rc.threads, "restart parallelism cap");
    cmd->add_option("--out", rc.out_dir, "output directory");
  };

  CLI::App* optimize = app.add_subcommand("optimize", "maximize S + F/epsilon at one epsilon");
  add_common(optimize);
  optimize->add_option("--epsilon", rc.epsilon, "trade-off parameter");

  CLI::App* trace = app.add_subcommand("trace", "continuation over an epsilon schedule");
  add_common(trace);
  trace->add_option("--schedule", schedule_text, "min:max:count:{log|lin}");
  trace->add_flag("--resume", resume, "reuse stored points, solve only missing ones");

  CLI::App* fit = app.add_subcommand("fit", "fit S(delta) to the traced curve");
  fit->add_option("input", fit_input, "run directory or curve.csv")->required();
  fit->add_option("--terms", rc.terms, "2 or 3 fit coefficients")
      ->check(CLI::IsMember({"2", "3"}));
  fit->add_option("--out", rc.out_dir, "directory for fit.json when input is a csv");
  fit->add_option("--config", config_path, "JSON config file");

  CLI::App* decompose =
      app.add_subcommand("decompose", "compile matrices into beamsplitter circuits");
  decompose->add_option("input", decompose_input, "run directory, point JSON, or matrix JSON")
      ->required();
  decompose->add_option("--out", decompose_out, "circuit path for single-file input");

  CLI::App* verify = app.add_subcommand("verify", "re-simulate stored artifacts");
  verify->add_option("input", verify_input, "run directory, point JSON, or circuit JSON")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    // Flags win over the config file: parse the file first, then re-apply
    // whatever was given on the command line.
    if (!config_path.empty()) {
      RunConfig file_rc;
      apply_config_file(file_rc, config_path);
      RunConfig flag_rc = rc;
      rc = file_rc;
      for (const CLI::App* cmd : {optimize, trace, fit}) {
        if (!cmd->parsed()) continue;
        auto won = [&](const std::string& flag) {
          return cmd->count(flag) > 0;
        };
        if (won("--target")) rc.target = flag_rc.target;
        if (won("--target-angle")) rc.target_angle = flag_rc.target_angle;
        if (won("--target-file")) rc.target_file = flag_rc.target_file;
        if (won("--ansatz")) rc.ansatz = flag_rc.ansatz;
        if (won("--restarts")) rc.restarts = flag_rc.restarts;
        if (won("--max-iterations")) rc.max_iterations = flag_rc.max_iterations;
        if (won("--gradient-step")) rc.gradient_step = flag_rc.gradient_step;
        if (won("--convergence-tol")) rc.convergence_tol = flag_rc.convergence_tol;
        if (won("--seed")) rc.seed = flag_rc.seed;
        if (won("--threads")) rc.threads = flag_rc.threads;
        if (won("--out")) rc.out_dir = flag_rc.out_dir;
        if (cmd == optimize && won("--epsilon")) rc.epsilon = flag_rc.epsilon;
        if (cmd == fit && won("--terms")) rc.terms = flag_rc.terms;
      }
    }
    if (!ancilla_in_text.empty()) rc.ancilla_in = parse_occupation(ancilla_in_text, "--ancilla-in");
    if (!ancilla_pattern_text.empty())
      rc.ancilla_pattern = parse_occupation(ancilla_pattern_text, "--ancilla-pattern");
    if (!schedule_text.empty()) rc.schedule = parse_schedule(schedule_text);
    load_target_file(rc);

    if (optimize->parsed()) return cmd_optimize(rc);
    if (trace->parsed()) return cmd_trace(rc, resume);
    if (fit->parsed()) return cmd_fit(rc, fit_input);
    if (decompose->parsed()) return cmd_decompose(decompose_input, decompose_out);
    if (verify->parsed()) return cmd_verify(verify_input);
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
