#pragma once

#include <string>

#include "wapeq/config.hpp"

namespace wapeq::cli {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Convergence study against the selected manufactured solution; writes the
// rate table as CSV plus an aligned text table and a run manifest. Exit 0
// when every defined rate at J >= 80 is at least 1.9.
int cmd_verify(const RunConfig& cfg, const std::string& out_dir);

// Range march recording sqrt(s(r^n)) ||U^n|| per step; writes per-step CSV.
// Exit 0 when the maximum relative drift stays within 5e-4.
int cmd_conserve(const RunConfig& cfg, const std::string& out_dir);

// Transmission-loss run: mode starter, receiver extraction, TL curve CSV.
// Exit 0 on completion.
int cmd_tl(const RunConfig& cfg, const std::string& out_dir);

// The config text echoed inside a manifest (between the config markers).
std::string extract_manifest_config(const std::string& manifest_path);

}  // namespace wapeq::cli
