#include "smaa/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace smaa {

std::string format_double(double x) {
  char buffer[64];
  const std::to_chars_result res = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, res.ptr);
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const std::from_chars_result res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last)
    throw std::runtime_error(what + ": not a number: '" + text + "'");
  return value;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

// lines of the stream with comments and blank lines dropped
std::vector<std::string> data_lines(std::istream& in, bool keep_all = false) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!keep_all) {
      const std::size_t mark = line.find('#');
      if (mark != std::string::npos) line.erase(mark);
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
    }
    lines.push_back(line);
  }
  return lines;
}

void check_label(const std::string& label, const char* what) {
  if (label.empty() || label.find_first_of(",\n\r \t") != std::string::npos)
    throw std::runtime_error(std::string(what) + ": label '" + label +
                             "' must be non-empty without spaces or commas");
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

}  // namespace

// ---- performance matrices ------------------------------------------------------

PerformanceMatrix read_performance_csv(std::istream& in) {
  const std::vector<std::string> lines = data_lines(in);
  if (lines.size() < 2) throw std::runtime_error("performance csv: need a header and rows");
  const std::vector<std::string> header = split_csv(lines[0]);
  if (header.size() < 2 || header[0] != "alt")
    throw std::runtime_error("performance csv: header must be alt,g1,...");
  const std::size_t n = header.size() - 1;
  const std::size_t m = lines.size() - 1;
  Matrix values(static_cast<Index>(m), static_cast<Index>(n));
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < m; ++r) {
    const std::vector<std::string> fields = split_csv(lines[r + 1]);
    if (fields.size() != header.size())
      throw std::runtime_error("performance csv: row " + std::to_string(r + 1) +
                               " has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(header.size()));
    labels.push_back(fields[0]);
    for (std::size_t c = 0; c < n; ++c)
      values(static_cast<Index>(r), static_cast<Index>(c)) =
          parse_double(fields[c + 1], "performance csv");
  }
  return PerformanceMatrix(values, labels);
}

void write_performance_csv(std::ostream& out, const PerformanceMatrix& perf) {
  out << "alt";
  for (Index c = 0; c < perf.criteria(); ++c) out << ",g" << (c + 1);
  out << "\n";
  for (Index a = 0; a < perf.alternatives(); ++a) {
    check_label(perf.label(a), "performance csv");
    out << perf.label(a);
    for (Index c = 0; c < perf.criteria(); ++c) out << "," << format_double(perf.values()(a, c));
    out << "\n";
  }
}

// ---- weight samples --------------------------------------------------------------

OmegaSample read_omega_csv(std::istream& in) {
  const std::vector<std::string> lines = data_lines(in);
  if (lines.size() < 2) throw std::runtime_error("weight csv: need a header and rows");
  const std::vector<std::string> header = split_csv(lines[0]);
  if (header.empty() || header[0] != "w1")
    throw std::runtime_error("weight csv: header must be w1,...");
  const std::size_t n = header.size();
  Matrix rows(static_cast<Index>(lines.size() - 1), static_cast<Index>(n));
  for (std::size_t r = 0; r + 1 < lines.size(); ++r) {
    const std::vector<std::string> fields = split_csv(lines[r + 1]);
    if (fields.size() != n)
      throw std::runtime_error("weight csv: row " + std::to_string(r + 1) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(n));
    for (std::size_t c = 0; c < n; ++c)
      rows(static_cast<Index>(r), static_cast<Index>(c)) = parse_double(fields[c], "weight csv");
  }
  return OmegaSample(rows);
}

void write_omega_csv(std::ostream& out, const OmegaSample& omega) {
  for (Index c = 0; c < omega.dimension(); ++c) out << (c ? "," : "") << "w" << (c + 1);
  out << "\n";
  for (Index t = 0; t < omega.size(); ++t) {
    for (Index c = 0; c < omega.dimension(); ++c)
      out << (c ? "," : "") << format_double(omega.rows()(t, c));
    out << "\n";
  }
}

// ---- masses ----------------------------------------------------------------------

Vector read_masses_csv(std::istream& in) {
  const std::vector<std::string> lines = data_lines(in);
  if (lines.size() < 2 || lines[0] != "mass")
    throw std::runtime_error("mass csv: header must be a single 'mass' column");
  Vector masses(static_cast<Index>(lines.size() - 1));
  for (std::size_t r = 0; r + 1 < lines.size(); ++r)
    masses(static_cast<Index>(r)) = parse_double(lines[r + 1], "mass csv");
  return masses;
}

void write_masses_csv(std::ostream& out, const Vector& masses) {
  out << "mass\n";
  for (Index t = 0; t < masses.size(); ++t) out << format_double(masses(t)) << "\n";
}

// ---- generic single-column values ------------------------------------------------

std::vector<double> read_value_column_csv(std::istream& in, const std::string& name) {
  const std::vector<std::string> lines = data_lines(in);
  if (lines.empty() || lines[0] != name)
    throw std::runtime_error("value csv: expected header '" + name + "'");
  std::vector<double> values;
  for (std::size_t r = 1; r < lines.size(); ++r)
    values.push_back(parse_double(lines[r], "value csv"));
  return values;
}

void write_value_column_csv(std::ostream& out, const std::string& name,
                            const std::vector<double>& values) {
  out << name << "\n";
  for (double v : values) out << format_double(v) << "\n";
}

// ---- index grids -----------------------------------------------------------------

void write_rai_csv(std::ostream& out, const PerformanceMatrix& perf, const Matrix& rai) {
  if (rai.rows() != perf.alternatives() || rai.cols() != perf.alternatives())
    throw std::invalid_argument("rai csv: matrix shape does not match the instance");
  out << "rank";
  for (Index a = 0; a < perf.alternatives(); ++a) out << "," << perf.label(a);
  out << "\n";
  for (Index r = 0; r < rai.rows(); ++r) {
    out << (r + 1);
    for (Index a = 0; a < rai.cols(); ++a) out << "," << format_double(rai(r, a));
    out << "\n";
  }
}

void write_pwi_csv(std::ostream& out, const PerformanceMatrix& perf, const Matrix& pwi) {
  if (pwi.rows() != perf.alternatives() || pwi.cols() != perf.alternatives())
    throw std::invalid_argument("pwi csv: matrix shape does not match the instance");
  out << "from/to";
  for (Index a = 0; a < perf.alternatives(); ++a) out << "," << perf.label(a);
  out << "\n";
  for (Index a = 0; a < pwi.rows(); ++a) {
    out << perf.label(a);
    for (Index b = 0; b < pwi.cols(); ++b) out << "," << format_double(pwi(a, b));
    out << "\n";
  }
}

// ---- preference statements ---------------------------------------------------------

namespace {

Index label_index(const PerformanceMatrix& perf, const std::string& label) {
  for (Index a = 0; a < perf.alternatives(); ++a)
    if (perf.label(a) == label) return a;
  throw std::runtime_error("preferences: unknown alternative '" + label + "'");
}

}  // namespace

PreferenceInfo read_preferences(std::istream& in, const PerformanceMatrix& perf) {
  PreferenceInfo prefs;
  for (const std::string& line : data_lines(in)) {
    const std::vector<std::string> parts = tokens(line);
    if (parts.empty()) continue;
    const std::string& kind = parts[0];
    const bool pair_kind = kind == "strict" || kind == "indiff" || kind == "u_strict" ||
                           kind == "u_indiff";
    const bool quad_kind = kind == "intensity" || kind == "u_intensity";
    if (!pair_kind && !quad_kind)
      throw std::runtime_error("preferences: unknown statement kind '" + kind + "'");
    const std::size_t arity = pair_kind ? 2 : 4;
    if (parts.size() != arity + 1)
      throw std::runtime_error("preferences: '" + kind + "' takes " + std::to_string(arity) +
                               " alternatives, got " + std::to_string(parts.size() - 1));
    if (pair_kind) {
      const Pair p{label_index(perf, parts[1]), label_index(perf, parts[2])};
      if (kind == "strict") prefs.certain_strict.push_back(p);
      if (kind == "indiff") prefs.certain_indiff.push_back(p);
      if (kind == "u_strict") prefs.uncertain_strict.push_back(p);
      if (kind == "u_indiff") prefs.uncertain_indiff.push_back(p);
    } else {
      const Quad q{label_index(perf, parts[1]), label_index(perf, parts[2]),
                   label_index(perf, parts[3]), label_index(perf, parts[4])};
      if (kind == "intensity") prefs.certain_intensity.push_back(q);
      if (kind == "u_intensity") prefs.uncertain_intensity.push_back(q);
    }
  }
  check_preferences(prefs, perf.alternatives());
  return prefs;
}

void write_preferences(std::ostream& out, const PerformanceMatrix& perf,
                       const PreferenceInfo& prefs) {
  for (Index a = 0; a < perf.alternatives(); ++a) check_label(perf.label(a), "preferences");
  auto pair_line = [&](const char* kind, const Pair& p) {
    out << kind << " " << perf.label(p.first) << " " << perf.label(p.second) << "\n";
  };
  auto quad_line = [&](const char* kind, const Quad& q) {
    out << kind << " " << perf.label(q.a) << " " << perf.label(q.b) << " " << perf.label(q.c)
        << " " << perf.label(q.d) << "\n";
  };
  for (const Pair& p : prefs.certain_strict) pair_line("strict", p);
  for (const Pair& p : prefs.certain_indiff) pair_line("indiff", p);
  for (const Quad& q : prefs.certain_intensity) quad_line("intensity", q);
  for (const Pair& p : prefs.uncertain_strict) pair_line("u_strict", p);
  for (const Pair& p : prefs.uncertain_indiff) pair_line("u_indiff", p);
  for (const Quad& q : prefs.uncertain_intensity) quad_line("u_intensity", q);
}

// ---- decision tables ----------------------------------------------------------------

namespace {

void write_ks_grid(std::ostream& out, const KsTable& table,
                   const std::vector<std::vector<KsCell>>& grid) {
  out << "method";
  for (const std::string& name : table.names) out << "," << name;
  out << "\n";
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    out << table.names[i];
    for (std::size_t j = 0; j < table.names.size(); ++j) out << "," << ks_cell_text(grid[i][j]);
    out << "\n";
  }
}

}  // namespace

void write_ks_equal_csv(std::ostream& out, const KsTable& table) {
  write_ks_grid(out, table, table.equal);
}

void write_ks_greater_csv(std::ostream& out, const KsTable& table) {
  write_ks_grid(out, table, table.greater);
}

}  // namespace smaa
