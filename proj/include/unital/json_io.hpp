#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "unital/bloch.hpp"
#include "unital/canonical.hpp"
#include "unital/channel.hpp"
#include "unital/mixed_unitary.hpp"

namespace unital {

using Json = nlohmann::ordered_json;

/// Channel documents: {"kind": "kraus" | "choi" | "pauli" | "bloch", "data": ...}.
/// Complex entries are [re, im]; matrices are row-major nested arrays.
/// Shape, type and non-finite errors raise ParseError naming the JSON path.
QubitChannel channel_from_json(const Json& doc);
QubitChannel parse_channel(std::string_view text);

Json channel_to_json(const QubitChannel& ch);
std::string dump_channel(const QubitChannel& ch);

Json matrix_to_json(const ComplexMatrix2& m);
Json matrix_to_json(const ComplexMatrix4& m);
Json matrix_to_json(const RealMatrix3& m);

ComplexMatrix2 matrix2_from_json(const Json& j, const std::string& path = "");

Json to_json(const Canonicalization& c);
Json to_json(const UnitaryDecomposition& d, double residual);
Json to_json(const BlochScaling& s);
Json to_json(const EquivalenceResult& e);

}  // namespace unital
