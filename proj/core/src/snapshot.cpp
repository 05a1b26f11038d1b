#include "mhd/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "mhd/error.hpp"
#include "mhd/experiments.hpp"
#include "mhd/spectral.hpp"

namespace mhd {
namespace {

const char* const kSuffix[3] = {".x", ".y", ".z"};

template <class U>
void put(std::string& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) { put(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
 public:
  Reader(const std::string& data, const std::string& origin) : data_(data), origin_(origin) {}

  template <class U>
  U get() {
    need(sizeof(U));
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i)
      v |= static_cast<U>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += sizeof(U);
    return v;
  }
  double get_f64() { return std::bit_cast<double>(get<std::uint64_t>()); }
  std::string bytes(std::size_t count) {
    need(count);
    std::string s = data_.substr(pos_, count);
    pos_ += count;
    return s;
  }
  void doubles(std::span<double> out) {
    need(out.size() * 8);
    if constexpr (std::endian::native == std::endian::little) {
      std::memcpy(out.data(), data_.data() + pos_, out.size() * 8);
      pos_ += out.size() * 8;
    } else {
      for (double& d : out) d = get_f64();
    }
  }
  bool at_end() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t count) {
    if (pos_ + count > data_.size()) throw SnapshotError(origin_ + ": truncated snapshot payload");
  }

  const std::string& data_;
  std::string origin_;
  std::size_t pos_ = 0;
};

}  // namespace

void Snapshot::add(const std::string& name, const ScalarField& f) {
  if (fields.empty() && n == 0) {
    n = f.grid().n();
    L = f.grid().length();
  }
  if (!(f.grid() == grid())) throw std::invalid_argument("Snapshot::add: grid mismatch for " + name);
  if (has_scalar(name)) throw std::invalid_argument("Snapshot::add: duplicate field " + name);
  if (name.size() > 0xffff) throw std::invalid_argument("Snapshot::add: field name too long");
  fields.push_back({name, f.is_physical() ? f : to_physical(f)});
}

void Snapshot::add(const std::string& name, const VectorField& f) {
  const VectorField p = f.is_physical() ? f : to_physical(f);
  for (int c = 0; c < 3; ++c) add(name + kSuffix[c], p[c]);
}

bool Snapshot::has_scalar(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return true;
  return false;
}

bool Snapshot::has_vector(const std::string& name) const {
  return has_scalar(name + ".x") && has_scalar(name + ".y") && has_scalar(name + ".z");
}

const ScalarField& Snapshot::scalar(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return f.field;
  throw SnapshotError("snapshot has no field named '" + name + "'");
}

VectorField Snapshot::vector(const std::string& name) const {
  if (!has_vector(name)) throw SnapshotError("snapshot has no vector field named '" + name + "'");
  return VectorField(scalar(name + ".x"), scalar(name + ".y"), scalar(name + ".z"));
}

std::vector<std::string> Snapshot::vector_names() const {
  std::vector<std::string> out;
  for (const auto& f : fields) {
    if (f.name.size() < 2 || f.name.compare(f.name.size() - 2, 2, ".x") != 0) continue;
    const std::string base = f.name.substr(0, f.name.size() - 2);
    if (has_vector(base)) out.push_back(base);
  }
  return out;
}

void write_snapshot(const Snapshot& snap, const std::filesystem::path& path) {
  std::string out(kSnapshotMagic, kSnapshotMagic + 8);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(snap.n));
  put_f64(out, snap.L);
  put_f64(out, snap.t);
  put_f64(out, snap.eta);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(snap.fields.size()));
  for (const auto& f : snap.fields) {
    put<std::uint16_t>(out, static_cast<std::uint16_t>(f.name.size()));
    out += f.name;
    const auto v = f.field.values();
    if constexpr (std::endian::native == std::endian::little) {
      out.append(reinterpret_cast<const char*>(v.data()), v.size() * 8);
    } else {
      for (double d : v) put_f64(out, d);
    }
  }
  try {
    write_text_atomic(path, out);
  } catch (const std::exception& e) {
    throw SnapshotError(e.what());
  }
}

Snapshot read_snapshot(const std::filesystem::path& path, std::optional<int> expected_n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError(path.string() + ": cannot open");
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(data, path.string());
  if (data.size() < 8 || std::memcmp(data.data(), kSnapshotMagic, 8) != 0)
    throw SnapshotError(path.string() + ": not a snapshot (bad magic)");
  r.bytes(8);
  const auto version = r.get<std::uint32_t>();
  if (version != kSnapshotVersion)
    throw SnapshotError(path.string() + ": unsupported snapshot version " + std::to_string(version));
  Snapshot s;
  s.n = static_cast<int>(r.get<std::uint32_t>());
  s.L = r.get_f64();
  s.t = r.get_f64();
  s.eta = r.get_f64();
  if (expected_n && *expected_n != s.n)
    throw SnapshotError(path.string() + ": grid size " + std::to_string(s.n) + " does not match expected " +
                        std::to_string(*expected_n));
  Grid grid = [&] {
    try {
      return s.grid();
    } catch (const std::exception& e) {
      throw SnapshotError(path.string() + ": invalid header: " + e.what());
    }
  }();
  const auto count = r.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto len = r.get<std::uint16_t>();
    std::string name = r.bytes(len);
    ScalarField f = ScalarField::physical(grid);
    r.doubles(f.values());
    s.fields.push_back({std::move(name), std::move(f)});
  }
  if (!r.at_end()) throw SnapshotError(path.string() + ": trailing bytes after payload");
  return s;
}

}  // namespace mhd
