#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mhd/field.hpp"

namespace mhd {

inline constexpr char kSnapshotMagic[8] = {'M', 'H', 'D', 'S', 'N', 'A', 'P', '1'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct NamedField {
  std::string name;
  ScalarField field;
};

/// Binary snapshot: magic "MHDSNAP1", then little-endian u32 version, u32 n,
/// f64 L, f64 t, f64 eta, u32 field count, and per field a u16 name length,
/// the UTF-8 name and n^3 f64 values in x-fastest order.
struct Snapshot {
  double L = 0.0;
  int n = 0;
  double t = 0.0;
  double eta = 0.0;
  std::vector<NamedField> fields;

  Grid grid() const { return Grid(L, n); }
  void add(const std::string& name, const ScalarField& f);
  /// Stored as name.x, name.y, name.z.
  void add(const std::string& name, const VectorField& f);
  bool has_scalar(const std::string& name) const;
  bool has_vector(const std::string& name) const;
  const ScalarField& scalar(const std::string& name) const;
  VectorField vector(const std::string& name) const;
  std::vector<std::string> vector_names() const;
};

/// Atomic write (temp file then rename). Throws SnapshotError on I/O failure.
void write_snapshot(const Snapshot& snap, const std::filesystem::path& path);
/// Throws SnapshotError on bad magic, version mismatch, truncation, or an n
/// different from expected_n when given.
Snapshot read_snapshot(const std::filesystem::path& path, std::optional<int> expected_n = std::nullopt);

}  // namespace mhd
