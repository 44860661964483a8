#pragma once

#include <iosfwd>

namespace homog::harness {

/// Subcommands euler1d | sqg | degregorio | vortex | gap3 | lift |
/// kernel-decay | preset <name> | sweep <glob>. Prints one summary line per
/// run. Returns 0, 2 on a physics abort, 3 on a configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homog::harness
