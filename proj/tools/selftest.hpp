// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>

namespace wetfbl::tool {

//! Quick oracle checks; returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace wetfbl::tool
