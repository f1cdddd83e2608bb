#pragma once

#include <filesystem>
#include <string>

#include "starkfid/analysis.hpp"
#include "starkfid/dynamics.hpp"
#include "starkfid/noise.hpp"

namespace starkfid {

/// CSV with header `t_s, re_amp, im_amp, intensity`, full double precision.
void write_trace_csv(const Trace& trace, const std::filesystem::path& path);

/// CSV with header `f_hz, density`.
void write_spectrum_csv(const Spectrum& spectrum, const std::filesystem::path& path);

/// CSV with header `t_bin_center_s, counts`.
void write_counts_csv(const CountsTrace& counts, const std::filesystem::path& path);

/// Write a whole file atomically (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string format_full(double value);  // 17 significant digits

}  // namespace starkfid
