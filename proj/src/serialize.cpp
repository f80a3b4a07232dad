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

#include "serialize.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "error.hpp"
#include "fock.hpp"

namespace loqgate {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::BadFormat, std::string("JSON parse failure: ") + e.what());
  }
}

Matrix matrix_from_node(const json& node) {
  require(node.is_array() && !node.empty(), Errc::BadFormat,
          "matrix must be a non-empty nested array");
  size_t rows = node.size();
  size_t cols = node.at(0).is_array() ? node.at(0).size() : 0;
  require(cols > 0, Errc::BadFormat, "matrix rows must be arrays");
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const json& row = node.at(r);
    require(row.is_array() && row.size() == cols, Errc::BadFormat,
            "matrix rows must have equal length");
    for (size_t c = 0; c < cols; ++c) {
      const json& cell = row.at(c);
      require(cell.is_array() && cell.size() == 2 && cell.at(0).is_number() &&
                  cell.at(1).is_number(),
              Errc::BadFormat, "matrix entries must be [re, im] pairs");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

std::vector<int> int_vector(const json& node, const char* what) {
  require(node.is_array(), Errc::BadFormat, std::string(what) + " must be an array");
  std::vector<int> out;
  out.reserve(node.size());
  for (const json& v : node) {
    require(v.is_number_integer(), Errc::BadFormat, std::string(what) + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

const json& field(const json& node, const char* key) {
  auto it = node.find(key);
  require(it != node.end(), Errc::BadFormat, std::string("missing field '") + key + "'");
  return *it;
}

void append_int_array(std::string& out, const std::vector<int>& v) {
  out += '[';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  out += ']';
}

void append_real_array(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_real(v[i]);
  }
  out += ']';
}

}  // namespace

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_to_json(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += '[';
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += '[';
      out += format_real(m(r, c).real());
      out += ", ";
      out += format_real(m(r, c).imag());
      out += ']';
    }
    out += ']';
  }
  out += ']';
  return out;
}

Matrix matrix_from_json_text(const std::string& text) { return matrix_from_node(parse_json(text)); }

std::string circuit_to_json(const Decomposition& d) {
  std::string out = "{\"n_modes\": " + std::to_string(d.n_modes) + ", \"elements\": [";
  for (size_t k = 0; k < d.rotations.size(); ++k) {
    const RotationElement& r = d.rotations[k];
    if (k) out += ", ";
    out += "{\"type\": \"bs\", \"modes\": [" + std::to_string(r.mode_i) + ", " +
           std::to_string(r.mode_j) + "], \"omega\": " + format_real(r.omega) +
           ", \"phi\": " + format_real(r.phi) + "}";
  }
  out += "], \"output_phases\": ";
  append_real_array(out, d.output_phases);
  out += "}\n";
  return out;
}

Decomposition circuit_from_json(const std::string& text) {
  json node = parse_json(text);
  require(node.is_object(), Errc::BadFormat, "circuit must be a JSON object");
  Decomposition d;
  const json& n_modes = field(node, "n_modes");
  require(n_modes.is_number_integer(), Errc::BadFormat, "n_modes must be an integer");
  d.n_modes = n_modes.get<int>();
  require(d.n_modes >= 1, Errc::BadFormat, "n_modes must be positive");

  const json& elements = field(node, "elements");
  require(elements.is_array(), Errc::BadFormat, "elements must be an array");
  for (const json& el : elements) {
    require(el.is_object(), Errc::BadFormat, "elements must be objects");
    const json& type = field(el, "type");
    require(type.is_string() && type.get<std::string>() == "bs", Errc::BadFormat,
            "unsupported element type");
    std::vector<int> modes = int_vector(field(el, "modes"), "modes");
    require(modes.size() == 2, Errc::BadFormat, "modes must list two entries");
    const json& omega = field(el, "omega");
    const json& phi = field(el, "phi");
    require(omega.is_number() && phi.is_number(), Errc::BadFormat,
            "omega and phi must be numbers");
    RotationElement r{modes[0], modes[1], omega.get<double>(), phi.get<double>()};
    require(r.mode_j >= 1 && r.mode_i > r.mode_j && r.mode_i <= d.n_modes, Errc::BadFormat,
            "element modes out of range");
    d.rotations.push_back(r);
  }

  const json& phases = field(node, "output_phases");
  require(phases.is_array() && static_cast<int>(phases.size()) == d.n_modes, Errc::BadFormat,
          "output_phases must list one angle per mode");
  for (const json& p : phases) {
    require(p.is_number(), Errc::BadFormat, "output_phases must hold numbers");
    d.output_phases.push_back(p.get<double>());
  }
  return d;
}

std::string point_to_json(const PointRecord& rec) {
  const CurvePoint& pt = rec.point;
  const GateProblem& prob = rec.problem;
  std::string out = "{\n";
  out += "  \"epsilon\": " + format_real(pt.epsilon) + ",\n";
  out += "  \"delta\": " + format_real(pt.delta) + ",\n";
  out += "  \"success\": " + format_real(pt.success) + ",\n";
  out += "  \"objective\": " + format_real(pt.objective) + ",\n";
  out += std::string("  \"converged\": ") + (pt.converged ? "true" : "false") + ",\n";
  out += "  \"setup\": {\n";
  out += "    \"target\": \"" + prob.target.name + "\",\n";
  out += "    \"target_matrix\": " + matrix_to_json(prob.target.matrix) + ",\n";
  out += "    \"n_qubits\": " + std::to_string(prob.encoding.n_qubits) + ",\n";
  out += "    \"ancilla_in\": ";
  append_int_array(out, prob.ancilla.input);
  out += ",\n    \"ancilla_pattern\": ";
  append_int_array(out, prob.ancilla.pattern);
  out += ",\n    \"ansatz\": \"" + ansatz_name(rec.ansatz) + "\",\n";
  out += "    \"passive_modes\": ";
  append_int_array(out, prob.passive_modes);
  out += "\n  },\n";
  out += "  \"n_modes\": " + std::to_string(prob.n_modes()) + ",\n";
  out += "  \"u\": [\n";
  for (Eigen::Index r = 0; r < pt.u.rows(); ++r) {
    out += "    [";
    for (Eigen::Index c = 0; c < pt.u.cols(); ++c) {
      if (c) out += ", ";
      out += '[';
      out += format_real(pt.u(r, c).real());
      out += ", ";
      out += format_real(pt.u(r, c).imag());
      out += ']';
    }
    out += (r + 1 < pt.u.rows()) ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

PointRecord point_from_json(const std::string& text) {
  json node = parse_json(text);
  require(node.is_object(), Errc::BadFormat, "point must be a JSON object");

  PointRecord rec;
  const json& setup = field(node, "setup");
  require(setup.is_object(), Errc::BadFormat, "setup must be an object");

  const json& target_name = field(setup, "target");
  require(target_name.is_string(), Errc::BadFormat, "target must be a string");
  Matrix target_matrix = matrix_from_node(field(setup, "target_matrix"));
  rec.problem.target = user_target(target_matrix, target_name.get<std::string>());

  const json& n_qubits = field(setup, "n_qubits");
  require(n_qubits.is_number_integer(), Errc::BadFormat, "n_qubits must be an integer");
  rec.problem.ancilla.input = int_vector(field(setup, "ancilla_in"), "ancilla_in");
  rec.problem.ancilla.pattern = int_vector(field(setup, "ancilla_pattern"), "ancilla_pattern");
  rec.problem.encoding = default_encoding(n_qubits.get<int>(), rec.problem.ancilla.n_modes());

  const json& ansatz = field(setup, "ansatz");
  require(ansatz.is_string(), Errc::BadFormat, "ansatz must be a string");
  rec.ansatz = ansatz_from_name(ansatz.get<std::string>());
  rec.problem.passive_modes = int_vector(field(setup, "passive_modes"), "passive_modes");

  CurvePoint& pt = rec.point;
  const json& eps = field(node, "epsilon");
  const json& delta = field(node, "delta");
  const json& success = field(node, "success");
  const json& objective = field(node, "objective");
  const json& converged = field(node, "converged");
  require(eps.is_number() && delta.is_number() && success.is_number() && objective.is_number(),
          Errc::BadFormat, "point metrics must be numbers");
  require(converged.is_boolean(), Errc::BadFormat, "converged must be a boolean");
  pt.epsilon = eps.get<double>();
  pt.delta = delta.get<double>();
  pt.success = success.get<double>();
  pt.objective = objective.get<double>();
  pt.converged = converged.get<bool>();
  pt.u = matrix_from_node(field(node, "u"));

  const json& n_modes = field(node, "n_modes");
  require(n_modes.is_number_integer() && n_modes.get<int>() == rec.problem.n_modes(),
          Errc::BadFormat, "n_modes does not match the setup");
  require(pt.u.rows() == rec.problem.n_modes() && pt.u.cols() == rec.problem.n_modes(),
          Errc::BadFormat, "u size does not match n_modes");
  return rec;
}

std::string curve_to_csv(const std::vector<CurvePoint>& points) {
  std::string out = "epsilon,delta,success,converged\n";
  for (const CurvePoint& p : points) {
    out += format_real(p.epsilon);
    out += ',';
    out += format_real(p.delta);
    out += ',';
    out += format_real(p.success);
    out += ',';
    out += (p.converged ? '1' : '0');
    out += '\n';
  }
  return out;
}

std::vector<CurvePoint> curve_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), Errc::BadFormat, "CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == "epsilon,delta,success,converged", Errc::BadFormat,
          "unexpected CSV header '" + line + "'");

  std::vector<CurvePoint> points;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<std::string, 4> fields;
    size_t start = 0;
    for (int f = 0; f < 4; ++f) {
      size_t comma = line.find(',', start);
      bool last = (f == 3);
      require(last ? comma == std::string::npos : comma != std::string::npos, Errc::BadFormat,
              "CSV line " + std::to_string(line_no) + " must have 4 fields");
      fields[static_cast<size_t>(f)] =
          line.substr(start, last ? std::string::npos : comma - start);
      start = comma + 1;
    }
    CurvePoint p;
    char* end = nullptr;
    p.epsilon = std::strtod(fields[0].c_str(), &end);
    require(end && *end == '\0', Errc::BadFormat, "bad epsilon on CSV line " +
                                                      std::to_string(line_no));
    p.delta = std::strtod(fields[1].c_str(), &end);
    require(end && *end == '\0', Errc::BadFormat, "bad delta on CSV line " +
                                                      std::to_string(line_no));
    p.success = std::strtod(fields[2].c_str(), &end);
    require(end && *end == '\0', Errc::BadFormat, "bad success on CSV line " +
                                                      std::to_string(line_no));
    require(fields[3] == "0" || fields[3] == "1", Errc::BadFormat,
            "bad converged flag on CSV line " + std::to_string(line_no));
    p.converged = (fields[3] == "1");
    points.push_back(std::move(p));
  }
  return points;
}

std::string fit_to_json(const FitResult& fit) {
  std::string out = "{\"S0\": " + format_real(fit.s0) + ", \"S1\": " + format_real(fit.s1) +
                    ", \"S2\": " + (fit.has_s2 ? format_real(fit.s2) : "null") +
                    ", \"ratio\": " + format_real(fit.ratio) +
                    ", \"residual_rms\": " + format_real(fit.residual_rms) + "}\n";
  return out;
}

std::string angle_report_to_json(const AngleReport& report) {
  std::string out = "{\n  \"n_points\": " + std::to_string(report.deltas.size()) + ",\n";
  out += "  \"pairs\": [";
  for (size_t s = 0; s < report.pairs.size(); ++s) {
    if (s) out += ", ";
    out += '[' + std::to_string(report.pairs[s].first) + ", " +
           std::to_string(report.pairs[s].second) + ']';
  }
  out += "],\n  \"phi_mean\": ";
  append_real_array(out, report.phi_mean);
  out += ",\n  \"phi_max_dev\": ";
  append_real_array(out, report.phi_max_dev);
  out += ",\n  \"phi_stddev\": ";
  append_real_array(out, report.phi_stddev);
  if (report.has_fixed) {
    out += ",\n  \"gauge_fixed\": {\n    \"anchors\": [";
    for (size_t a = 0; a < report.anchors.size(); ++a) {
      if (a) out += ", ";
      out += '[' + std::to_string(report.anchors[a].first) + ", " +
             std::to_string(report.anchors[a].second) + ']';
    }
    out += "],\n    \"phi_mean\": ";
    append_real_array(out, report.phi_fixed_mean);
    out += ",\n    \"phi_max_dev\": ";
    append_real_array(out, report.phi_fixed_max_dev);
    out += ",\n    \"phi_stddev\": ";
    append_real_array(out, report.phi_fixed_stddev);
    out += "\n  }";
  }
  out += ",\n  \"rows\": [\n";
  for (size_t p = 0; p < report.deltas.size(); ++p) {
    out += "    {\"delta\": " + format_real(report.deltas[p]) + ", \"omega\": ";
    append_real_array(out, report.omegas[p]);
    out += ", \"phi\": ";
    append_real_array(out, report.phis[p]);
    out += ", \"output_phases\": ";
    append_real_array(out, report.out_phases[p]);
    if (report.has_fixed) {
      out += ", \"phi_fixed\": ";
      append_real_array(out, report.phis_fixed[p]);
      out += ", \"output_phases_fixed\": ";
      append_real_array(out, report.out_phases_fixed[p]);
    }
    out += (p + 1 < report.deltas.size()) ? "},\n" : "}\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace loqgate
