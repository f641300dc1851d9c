#include "agekit/dataset.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "agekit/errors.hpp"
#include "agekit/rng.hpp"

namespace agekit {

void Dataset::add_row(std::span<const double> row_values, Label label,
                      std::string group) {
  if (row_values.size() != n_features())
    throw DimensionMismatch("row has " + std::to_string(row_values.size()) +
                            " values, dataset has " + std::to_string(n_features()) +
                            " features");
  values.insert(values.end(), row_values.begin(), row_values.end());
  labels.push_back(label);
  groups.push_back(std::move(group));
}

Dataset Dataset::select_rows(std::span<const std::size_t> indices) const {
  Dataset out;
  out.names = names;
  out.kind = kind;
  out.values.reserve(indices.size() * n_features());
  out.labels.reserve(indices.size());
  out.groups.reserve(indices.size());
  for (std::size_t i : indices) out.add_row(row(i), labels[i], groups[i]);
  return out;
}

Dataset apply_mask(const Dataset& data, const FeatureMask& mask) {
  if (mask.empty()) throw EmptyMask("feature mask is empty");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < data.names.size(); ++i) index[data.names[i]] = i;

  std::vector<std::size_t> cols;
  cols.reserve(mask.size());
  for (const auto& name : mask) {
    auto it = index.find(name);
    if (it == index.end()) throw MissingFeature(name);
    cols.push_back(it->second);
  }

  Dataset out;
  out.names = mask;
  out.kind = data.kind;
  out.labels = data.labels;
  out.groups = data.groups;
  out.values.resize(data.size() * mask.size());
  const std::size_t d = data.n_features();
  for (std::size_t r = 0; r < data.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      out.values[r * cols.size() + c] = data.values[r * d + cols[c]];
  return out;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(const Dataset& data, std::ostream& out) {
  std::string line;
  for (std::size_t i = 0; i < data.names.size(); ++i) {
    if (i > 0) line += ',';
    line += data.names[i];
  }
  line += ",label,group\n";
  out << line;
  for (std::size_t r = 0; r < data.size(); ++r) {
    line.clear();
    auto row = data.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += ',';
      line += format_double(row[c]);
    }
    line += ',';
    line += label_name(data.labels[r]);
    line += ',';
    line += data.groups[r];
    line += '\n';
    out << line;
  }
}

void write_csv(const Dataset& data, const std::filesystem::path& path,
               const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  if (!comment.empty()) out << "# " << comment << "\n";
  write_csv(data, out);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

Dataset read_csv(std::istream& in) {
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (!have_header) {
      if (fields.size() < 3)
        throw ParseError(line_no, "CSV header needs features plus label,group");
      if (fields[fields.size() - 2] != "label" || fields.back() != "group")
        throw ParseError(line_no, "CSV header must end with label,group");
      data.names.assign(fields.begin(), fields.end() - 2);
      have_header = true;
      continue;
    }
    if (fields.size() != data.names.size() + 2)
      throw ParseError(line_no, "wrong field count");
    std::vector<double> row(data.names.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& f = fields[i];
      auto res = std::from_chars(f.data(), f.data() + f.size(), row[i]);
      if (res.ec != std::errc{} || res.ptr != f.data() + f.size())
        throw ParseError(line_no, "bad number '" + f + "'");
    }
    auto label = label_from_name(fields[fields.size() - 2]);
    if (!label) throw ParseError(line_no, "unknown label");
    data.add_row(row, *label, fields.back());
  }
  if (!have_header) throw Error("empty CSV");
  return data;
}

Dataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_csv(in);
}

std::uint64_t row_content_hash(const Dataset& data) {
  std::uint64_t acc = 0;
  const std::size_t d = data.n_features();
  for (std::size_t r = 0; r < data.size(); ++r) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::size_t c = 0; c < d; ++c) {
      std::uint64_t bits;
      const double v = data.values[r * d + c];
      std::memcpy(&bits, &v, sizeof(bits));
      std::uint64_t state = h ^ bits;
      h = splitmix64(state);
    }
    std::uint64_t state = h ^ (data.labels[r] == Label::Child ? 0x9eULL : 0x61ULL);
    acc += splitmix64(state);  // order-independent sum
  }
  return acc;
}

}  // namespace agekit
