#include "morrad/stepfn_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "morrad/error.hpp"

namespace morrad {
namespace {

std::uint64_t to_little(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::little) return x;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((x >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xff),
                                 static_cast<char>((v >> 8) & 0xff),
                                 static_cast<char>((v >> 16) & 0xff),
                                 static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw UsageError("truncated step function header");
  return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) |
         (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
}

}  // namespace

StepFunction read_stepfn_csv(std::istream& in, int cap) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string cell = line.substr(first, last - first + 1);
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) {
      throw UsageError("step function CSV line " + std::to_string(line_no) +
                       ": cannot parse '" + cell + "'");
    }
    values.push_back(v);
  }
  return StepFunction::from_samples(std::move(values), cap);
}

void write_stepfn_csv(std::ostream& out, const StepFunction& f) {
  char buf[64];
  for (double v : f.values()) {
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
    out.put('\n');
  }
}

StepFunction read_stepfn_binary(std::istream& in, int cap) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kStepfnMagic, 4) != 0) {
    throw UsageError("not a binary step function (bad magic)");
  }
  const std::uint32_t n = get_u32(in);
  check_resolution(static_cast<int>(std::min<std::uint32_t>(n, 64)), cap);
  std::vector<double> values(std::size_t{1} << n);
  for (double& v : values) {
    std::uint64_t bits = 0;
    in.read(reinterpret_cast<char*>(&bits), 8);
    if (!in) throw UsageError("truncated binary step function");
    v = std::bit_cast<double>(to_little(bits));
  }
  return StepFunction::from_values(std::move(values), static_cast<int>(n), cap);
}

void write_stepfn_binary(std::ostream& out, const StepFunction& f) {
  out.write(kStepfnMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(f.resolution()));
  for (double v : f.values()) {
    const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(&bits), 8);
  }
}

StepFunction load_stepfn(const std::string& path, int cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open step function file '" + path + "'");
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  const bool binary = in.gcount() == 4 && std::memcmp(magic, kStepfnMagic, 4) == 0;
  in.clear();
  in.seekg(0);
  return binary ? read_stepfn_binary(in, cap) : read_stepfn_csv(in, cap);
}

void save_stepfn(const std::string& path, const StepFunction& f, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  if (binary) {
    write_stepfn_binary(out, f);
  } else {
    write_stepfn_csv(out, f);
  }
}

}  // namespace morrad
