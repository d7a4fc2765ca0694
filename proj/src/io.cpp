#include "gave/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gave {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open " + path + " for reading");
  }
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

Eigen::Index read_dimension(const json& j, const char* key,
                            const std::string& path) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw std::invalid_argument(path + ": missing integer field \"" +
                                std::string(key) + "\"");
  }
  const auto value = j[key].get<std::int64_t>();
  if (value < 1) {
    throw std::invalid_argument(path + ": \"" + std::string(key) +
                                "\" must be at least 1");
  }
  return static_cast<Eigen::Index>(value);
}

std::vector<double> read_numbers(const json& j, const char* key,
                                 std::size_t expected,
                                 const std::string& path) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw std::invalid_argument(path + ": missing array field \"" +
                                std::string(key) + "\"");
  }
  const json& arr = j[key];
  if (arr.size() != expected) {
    throw std::invalid_argument(path + ": field \"" + std::string(key) +
                                "\" must hold " + std::to_string(expected) +
                                " numbers, found " +
                                std::to_string(arr.size()));
  }
  std::vector<double> values;
  values.reserve(expected);
  for (const json& entry : arr) {
    if (!entry.is_number()) {
      throw std::invalid_argument(path + ": field \"" + std::string(key) +
                                  "\" contains a non-numeric entry");
    }
    values.push_back(entry.get<double>());
  }
  return values;
}

Matrix to_matrix(const std::vector<double>& values, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = values[static_cast<std::size_t>(i * n + j)];
    }
  }
  return m;
}

Vector to_vector(const std::vector<double>& values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = values[i];
  }
  return v;
}

void append_matrix(std::ostream& out, const Matrix& m) {
  out << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != 0 || j != 0) {
        out << ", ";
      }
      out << format_double(m(i, j));
    }
  }
  out << ']';
}

void append_vector(std::ostream& out, const Vector& v) {
  out << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i != 0) {
      out << ", ";
    }
    out << format_double(v[i]);
  }
  out << ']';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write to " + path + " failed");
  }
}

void append_trace_header(std::ostream& out, Eigen::Index n) {
  out << "k_or_t";
  for (Eigen::Index i = 1; i <= n; ++i) {
    out << ",x_" << i;
  }
  out << ",residual_norm\n";
}

void append_trace_row(std::ostream& out, const std::string& key,
                      const Vector& x, double residual_norm) {
  out << key;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out << ',' << format_double(x[i]);
  }
  out << ',' << format_double(residual_norm) << '\n';
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

GaveProblem read_problem_json(const std::string& path) {
  const json j = parse_file(path);
  const Eigen::Index n = read_dimension(j, "n", path);
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const Matrix a = to_matrix(read_numbers(j, "A", count, path), n);
  const Matrix b = to_matrix(read_numbers(j, "B", count, path), n);
  const Vector c =
      to_vector(read_numbers(j, "c", static_cast<std::size_t>(n), path));
  try {
    return GaveProblem(a, b, c);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_problem_json(const std::string& path, const GaveProblem& problem) {
  std::ostringstream out;
  out << "{\n  \"n\": " << problem.n() << ",\n  \"A\": ";
  append_matrix(out, problem.A());
  out << ",\n  \"B\": ";
  append_matrix(out, problem.B());
  out << ",\n  \"c\": ";
  append_vector(out, problem.c());
  out << "\n}\n";
  write_text(path, out.str());
}

LcpProblem read_lcp_json(const std::string& path) {
  const json j = parse_file(path);
  const Eigen::Index l = read_dimension(j, "l", path);
  const auto count = static_cast<std::size_t>(l) * static_cast<std::size_t>(l);
  const Matrix m = to_matrix(read_numbers(j, "M", count, path), l);
  const Vector q =
      to_vector(read_numbers(j, "q", static_cast<std::size_t>(l), path));
  try {
    return LcpProblem(m, q);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_lcp_json(const std::string& path, const LcpProblem& lcp) {
  std::ostringstream out;
  out << "{\n  \"l\": " << lcp.l() << ",\n  \"M\": ";
  append_matrix(out, lcp.M());
  out << ",\n  \"q\": ";
  append_vector(out, lcp.q());
  out << "\n}\n";
  write_text(path, out.str());
}

HlcpProblem read_hlcp_json(const std::string& path) {
  const json j = parse_file(path);
  const Eigen::Index l = read_dimension(j, "l", path);
  const auto count = static_cast<std::size_t>(l) * static_cast<std::size_t>(l);
  const Matrix c = to_matrix(read_numbers(j, "C", count, path), l);
  const Matrix d = to_matrix(read_numbers(j, "D", count, path), l);
  const Vector p =
      to_vector(read_numbers(j, "p", static_cast<std::size_t>(l), path));
  try {
    return HlcpProblem(c, d, p);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_hlcp_json(const std::string& path, const HlcpProblem& hlcp) {
  std::ostringstream out;
  out << "{\n  \"l\": " << hlcp.l() << ",\n  \"C\": ";
  append_matrix(out, hlcp.C());
  out << ",\n  \"D\": ";
  append_matrix(out, hlcp.D());
  out << ",\n  \"p\": ";
  append_vector(out, hlcp.p());
  out << "\n}\n";
  write_text(path, out.str());
}

void write_trace_csv(const std::string& path, const IterateLog& log) {
  if (log.iterates.empty()) {
    throw std::invalid_argument("iterate log is empty");
  }
  std::ostringstream out;
  append_trace_header(out, log.iterates.front().size());
  for (std::size_t k = 0; k < log.iterates.size(); ++k) {
    append_trace_row(out, std::to_string(k), log.iterates[k],
                     log.residual_norms[k]);
  }
  write_text(path, out.str());
}

void write_trace_csv(const std::string& path, const GaveProblem& problem,
                     const Trajectory& traj) {
  if (traj.times.empty()) {
    throw std::invalid_argument("trajectory is empty");
  }
  std::ostringstream out;
  append_trace_header(out, problem.n());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    append_trace_row(out, format_double(traj.times[i]), traj.states[i],
                     residual(problem, traj.states[i]).norm());
  }
  write_text(path, out.str());
}

}  // namespace gave
