#pragma once
// Run configuration as flat `key = value` text. Keys:
//   preset model n1 n2 fd_order cfl t_end sample_dt dealias drift_every
//   experimental_general_rhos
//   ic.shape ic.epsilon ic.mode ic.rho_s ic.seed
//   guards.max_linf guards.nan_abort

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stratlab/transport.hpp"

namespace stratlab {

/// Throws std::invalid_argument on an unknown key or malformed value.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Ordered key/value pairs; '#' starts a comment. Throws on malformed lines.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// Parses "key=value".
std::pair<std::string, std::string> split_assignment(const std::string& s);

/// Every key with its current value, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config);

}  // namespace stratlab
