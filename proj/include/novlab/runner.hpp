#pragma once

#include <iosfwd>

#include "novlab/illposed_data.hpp"
#include "novlab/run_config.hpp"

namespace novlab {

/// Data parameters implied by a validated config.
IllposedDataParams data_params(const RunConfig& config);

/// Dispatches a validated config. Returns 0 when every verdict passes, 1 when one
/// fails (outputs still written) and 2 on usage or I/O errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace novlab
