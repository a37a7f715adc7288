// Copyright (c) the hopf project contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "case.hpp"

namespace hopf {

/// Parses a native-schema JSON case document and validates it.
/// Throws ParseError (with a JSON path) or ValidationError.
CaseFile parse_json_case(const std::string& text);

/// Serializes a case back to the native JSON schema. Numeric fields are
/// written with round-trip precision, so parse(write(parse(x))) == parse(x).
std::string write_case_json(const CaseFile& cf);

}  // namespace hopf
