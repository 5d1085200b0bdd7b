#pragma once

// Line-oriented text formats.
//
// Instance:     c <comment>
//               p fo <n> <m>
//               e <u> <v> <w_u> <w_v>        (m lines, 1-based vertices)
// Certificate:  o <edge-id> <1|2|c>          (1-based edge ids; 1 = toward u,
//                                             2 = toward v, c = charity)
//               other lines are ignored, so solver output can be piped in.
// TOO:          p too <n> <m>
//               v <vertex> <capacity>
//               e <u> <v> <value>

#include <iosfwd>
#include <string>

#include "fairorient/core.hpp"
#include "fairorient/reductions.hpp"

namespace fairorient::io {

Instance parse_instance(std::istream &in);
Instance parse_instance_text(const std::string &text);
Instance read_instance_file(const std::string &path);
void write_instance(std::ostream &out, const Instance &inst, const std::string &comment = {});
std::string instance_text(const Instance &inst);

/// Every edge must appear exactly once.
PartialOrientation parse_certificate(std::istream &in, const Instance &inst);
PartialOrientation read_certificate_file(const std::string &path, const Instance &inst);
void write_certificate(std::ostream &out, const PartialOrientation &o);

reductions::TooInstance parse_too(std::istream &in);
reductions::TooInstance read_too_file(const std::string &path);
void write_too(std::ostream &out, const reductions::TooInstance &too);

}  // namespace fairorient::io
