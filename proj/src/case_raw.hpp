// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "case.hpp"

namespace hopf {

/// Reads the PSS/E RAW v33 subset: BUS, LOAD, FIXED SHUNT, GENERATOR,
/// BRANCH, 2-winding TRANSFORMER and SWITCHED SHUNT groups. Any other group
/// is skipped with a warning recorded on the returned case. 3-winding
/// transformers are an error. Throws ParseError with a line number.
CaseFile parse_raw_subset(const std::string& text);

}  // namespace hopf
