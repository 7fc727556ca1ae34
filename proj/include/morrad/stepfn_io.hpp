#ifndef MORRAD_STEPFN_IO_HPP_
#define MORRAD_STEPFN_IO_HPP_

#include <iosfwd>
#include <string>

#include "morrad/stepfn.hpp"

namespace morrad {

// CSV: one value per line; blank lines and lines starting with '#' are
// skipped; the count must be a power of two.
StepFunction read_stepfn_csv(std::istream& in, int cap = kDefaultResolutionCap);
void write_stepfn_csv(std::ostream& out, const StepFunction& f);

// Binary dump: the 4 bytes "MRSF", N as little-endian uint32, then 2^N
// little-endian IEEE-754 doubles.
inline constexpr char kStepfnMagic[4] = {'M', 'R', 'S', 'F'};
StepFunction read_stepfn_binary(std::istream& in,
                                int cap = kDefaultResolutionCap);
void write_stepfn_binary(std::ostream& out, const StepFunction& f);

// Picks the format from the magic bytes.
StepFunction load_stepfn(const std::string& path,
                         int cap = kDefaultResolutionCap);
void save_stepfn(const std::string& path, const StepFunction& f, bool binary);

}  // namespace morrad

#endif  // MORRAD_STEPFN_IO_HPP_
