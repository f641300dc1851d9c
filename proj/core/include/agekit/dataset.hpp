#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "agekit/types.hpp"

namespace agekit {

/// Feature matrix with per-row label and group (session id). Rows belonging
/// to one session are stored in chronological order; builders must append
/// them that way, bundling later relies on it.
struct Dataset {
  std::vector<std::string> names;
  std::vector<double> values;  // row-major, size() * n_features()
  std::vector<Label> labels;
  std::vector<std::string> groups;
  ObservationKind kind = ObservationKind::Stroke;

  std::size_t n_features() const { return names.size(); }
  std::size_t size() const { return labels.size(); }

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * n_features(), n_features()};
  }

  void add_row(std::span<const double> row_values, Label label, std::string group);

  /// Subset of rows, same schema.
  Dataset select_rows(std::span<const std::size_t> indices) const;
};

using FeatureMask = std::vector<std::string>;

/// Projects the dataset onto the mask's features, in mask order. Labels and
/// groups are preserved. Throws MissingFeature for unknown names and
/// EmptyMask for an empty mask.
Dataset apply_mask(const Dataset& data, const FeatureMask& mask);

/// CSV with header `name1,...,nameD,label,group`, one row per observation.
/// Values use the shortest round-trip representation, so write/read is exact.
/// Lines starting with '#' are skipped on read (config echoes).
void write_csv(const Dataset& data, std::ostream& out);
void write_csv(const Dataset& data, const std::filesystem::path& path,
               const std::string& comment = {});
Dataset read_csv(std::istream& in);
Dataset read_csv(const std::filesystem::path& path);

/// Order-independent hash of row contents; used by the evaluation harness to
/// assert that feature selection saw exactly the training fold.
std::uint64_t row_content_hash(const Dataset& data);

std::string format_double(double v);

}  // namespace agekit
