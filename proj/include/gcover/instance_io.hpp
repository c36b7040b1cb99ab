#pragma once

#include <string>
#include <string_view>

#include "gcover/instance.hpp"

namespace gcover {

// Line-based text format:
//   problem eds-tree|multicut-tree|eds-general|set-cover|facility-location
//   root <id>                           tree problems, default 0
//   nodes <n>                           node count (ground set size for set-cover)
//   node <id> <weight>                  unlisted nodes weigh 0
//   edge <u> <v> <weight> [<penalty>]   penalty required for eds problems
//   demand <s> <t> <penalty>            multicut only
//   set <cost> <member>...              set-cover only, members 0-based
//   facility <id> <opening-cost>        facility-location only
//   client <id>
//   conn <client> <facility> <cost>     missing connections cost inf
// '#' starts a comment. Numbers are integers or "p/q"; penalties and
// connection costs also accept "inf". Tree edges are reordered by child id.
// Throws ParseError carrying the offending line number.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst);

}  // namespace gcover
