#include "starkfid/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace starkfid {

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path parent = path.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
    std::string body = "t_s, re_amp, im_amp, intensity\n";
    body.reserve(80 * trace.amplitude.size());
    for (int m = 0; m < trace.grid.n_points; ++m) {
        body += format_full(trace.grid.time(m));
        body += ", ";
        body += format_full(trace.amplitude[m].real());
        body += ", ";
        body += format_full(trace.amplitude[m].imag());
        body += ", ";
        body += format_full(trace.intensity[m]);
        body += '\n';
    }
    write_file_atomic(path, body);
}

void write_spectrum_csv(const Spectrum& spectrum, const std::filesystem::path& path) {
    std::string body = "f_hz, density\n";
    body.reserve(48 * spectrum.freq_hz.size());
    for (std::size_t k = 0; k < spectrum.freq_hz.size(); ++k) {
        body += format_full(spectrum.freq_hz[k]);
        body += ", ";
        body += format_full(spectrum.density[k]);
        body += '\n';
    }
    write_file_atomic(path, body);
}

void write_counts_csv(const CountsTrace& counts, const std::filesystem::path& path) {
    std::string body = "t_bin_center_s, counts\n";
    for (std::size_t b = 0; b < counts.counts.size(); ++b) {
        body += format_full(counts.t_bin_center_s[b]);
        body += ", ";
        body += std::to_string(counts.counts[b]);
        body += '\n';
    }
    write_file_atomic(path, body);
}

}  // namespace starkfid
