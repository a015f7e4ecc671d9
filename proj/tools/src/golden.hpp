#pragma once

#include <string_view>
#include <vector>

#include "document.hpp"

namespace equispectra::cli {

/// Hand-transcribed reference documents for the three worked examples:
/// "disk", "hermitian", "quartic". Group-ring entries are written in the
/// normal form modulo the group relation.
const Json& golden(std::string_view name);

/// Keys of an equivariantize document that the golden files pin.
const std::vector<std::string>& golden_keys();

/// The pinned keys of `doc`, in golden order.
Json golden_view(const Json& doc);

}  // namespace equispectra::cli
