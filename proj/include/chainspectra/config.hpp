#pragma once

#include <filesystem>
#include <string_view>

#include "chainspectra/chain.hpp"

namespace chainspectra {

/// Parses `{"vertices": [...], "lambdas": [...]}`. Both keys are required,
/// both must be arrays of numbers, and any other key is rejected.
/// Throws ValidationError with a one-line message.
Chain parse_chain_config(std::string_view json_text);

Chain load_chain_config(const std::filesystem::path& path);

}  // namespace chainspectra
