#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "novlab/field.hpp"

namespace novlab {

/// Named fields on one grid, plus free-form metadata.
///
/// On disk: a text header
///   NOVLAB-FIELD 1
///   num_points=<N>
///   length=<L>
///   time=<t>
///   fields=<name>,<name>,...
///   encoding=f64le
///   meta.<key>=<value>      (any number)
///   end-header
/// followed by N little-endian doubles per field, in the order listed.
/// Numbers in the header use shortest round-trip formatting, so a reload is bit-exact.
struct FieldDump {
  Grid grid{16, 1.0};
  double time = 0.0;
  std::vector<std::pair<std::string, RealField>> fields;
  std::vector<std::pair<std::string, std::string>> metadata;

  const RealField& field(const std::string& name) const;
};

void write_field_dump(const std::filesystem::path& path, const FieldDump& dump);
FieldDump read_field_dump(const std::filesystem::path& path);

}  // namespace novlab
