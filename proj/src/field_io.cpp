#include "novlab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "novlab/error.hpp"
#include "novlab/report.hpp"

namespace novlab {
namespace {

constexpr const char* kMagic = "NOVLAB-FIELD 1";

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::little) {
    return bits;
  } else {
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i) out |= ((bits >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return out;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

const RealField& FieldDump::field(const std::string& name) const {
  for (const auto& [n, f] : fields) {
    if (n == name) return f;
  }
  throw InvalidArgument("field dump has no field named " + name);
}

void write_field_dump(const std::filesystem::path& path, const FieldDump& dump) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << kMagic << '\n'
      << "num_points=" << dump.grid.size() << '\n'
      << "length=" << format_number(dump.grid.length()) << '\n'
      << "time=" << format_number(dump.time) << '\n'
      << "fields=";
  for (std::size_t i = 0; i < dump.fields.size(); ++i) {
    const auto& [name, f] = dump.fields[i];
    if (name.empty() || name.find_first_of(",\n=") != std::string::npos) {
      throw InvalidArgument("invalid field name '" + name + "'");
    }
    if (!(f.grid() == dump.grid)) throw GridMismatch("field " + name + " is not on the dump grid");
    out << (i ? "," : "") << name;
  }
  out << "\nencoding=f64le\n";
  for (const auto& [k, v] : dump.metadata) out << "meta." << k << '=' << v << '\n';
  out << "end-header\n";
  for (const auto& [name, f] : dump.fields) {
    for (double v : f.values()) {
      const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(v));
      out.write(reinterpret_cast<const char*>(&bits), sizeof(bits));
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

FieldDump read_field_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kMagic) {
    throw IoError(path.string() + " is not a novlab field dump");
  }
  std::size_t num_points = 0;
  double length = 0.0;
  double time = 0.0;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> metadata;
  bool terminated = false;
  while (std::getline(in, line)) {
    if (line == "end-header") {
      terminated = true;
      break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError("malformed header line '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "num_points") {
      num_points = std::stoull(value);
    } else if (key == "length") {
      length = std::stod(value);
    } else if (key == "time") {
      time = std::stod(value);
    } else if (key == "fields") {
      names = split(value, ',');
    } else if (key == "encoding") {
      if (value != "f64le") throw IoError("unsupported encoding " + value);
    } else if (key.rfind("meta.", 0) == 0) {
      metadata.emplace_back(key.substr(5), value);
    } else {
      throw IoError("unknown header key '" + key + "' in " + path.string());
    }
  }
  if (!terminated) throw IoError("truncated header in " + path.string());

  FieldDump dump;
  dump.grid = Grid(num_points, length);
  dump.time = time;
  dump.metadata = std::move(metadata);
  for (const auto& name : names) {
    std::vector<double> values(num_points);
    for (double& v : values) {
      std::uint64_t bits = 0;
      if (!in.read(reinterpret_cast<char*>(&bits), sizeof(bits))) {
        throw IoError("truncated data for field " + name + " in " + path.string());
      }
      v = std::bit_cast<double>(to_little_endian(bits));
    }
    dump.fields.emplace_back(name, RealField(dump.grid, std::move(values)));
  }
  return dump;
}

}  // namespace novlab
