//==============================================================================
// io.hpp
// Configuration parsing/serialization (INI-style key=value), binary snapshot
// persistence, and run manifests.  All file writes are atomic (temp + rename).
//
// Snapshot layout (little-endian):
//   magic "SQGF" (4 bytes) | version u32 = 1 | N u64 | L f64 | t f64 |
//   N pairs (re f64, im f64) of profile coefficients in storage order k = 0..N-1.
//==============================================================================
#pragma once

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqgfront/evolution.hpp"
#include "sqgfront/grid.hpp"

namespace sqg {

//------------------------------------------------------------------------------
// Atomic file write: write to <path>.tmp in the same directory, then rename.
//------------------------------------------------------------------------------
inline void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("atomic_write: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

//------------------------------------------------------------------------------
// Config parsing.
//------------------------------------------------------------------------------
namespace detail {

inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "n", "length", "initial_type", "amplitude", "width", "carrier", "center",
        "snapshot_path", "dt", "t_end", "n_max", "dealias_factor", "output_stride",
        "diagnostics", "guard_fraction", "seed", "output_dir", "oracle_cutoff"};
    return keys;
}

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

inline std::string nearest_key(const std::string& key) {
    std::string best;
    std::size_t best_d = SIZE_MAX;
    for (const std::string& k : config_keys()) {
        const std::size_t d = edit_distance(key, k);
        if (d < best_d) { best_d = d; best = k; }
    }
    return best;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
inline T parse_number(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    T v{};
    in >> v;
    if (in.fail() || !in.eof())
        throw std::invalid_argument("parse_config: value '" + value + "' for key '" + key +
                                    "' is not a valid number");
    return v;
}

}  // namespace detail

inline SimConfig parse_config_text(const std::string& text) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("parse_config: malformed section at line " +
                                            std::to_string(lineno));
            continue;  // sections are organizational only
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parse_config: expected key=value at line " +
                                        std::to_string(lineno));
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));

        if (key == "n") cfg.n = detail::parse_number<std::size_t>(key, value);
        else if (key == "length") cfg.length = detail::parse_number<double>(key, value);
        else if (key == "initial_type") cfg.initial_type = value;
        else if (key == "amplitude") cfg.amplitude = detail::parse_number<double>(key, value);
        else if (key == "width") cfg.width = detail::parse_number<double>(key, value);
        else if (key == "carrier") cfg.carrier = detail::parse_number<double>(key, value);
        else if (key == "center") cfg.center = detail::parse_number<double>(key, value);
        else if (key == "snapshot_path") cfg.snapshot_path = value;
        else if (key == "dt") cfg.dt = detail::parse_number<double>(key, value);
        else if (key == "t_end") cfg.t_end = detail::parse_number<double>(key, value);
        else if (key == "n_max") cfg.n_max = detail::parse_number<int>(key, value);
        else if (key == "dealias_factor") cfg.dealias_factor = detail::parse_number<double>(key, value);
        else if (key == "output_stride") cfg.output_stride = detail::parse_number<std::size_t>(key, value);
        else if (key == "diagnostics") cfg.diagnostics = value;
        else if (key == "guard_fraction") cfg.guard_fraction = detail::parse_number<double>(key, value);
        else if (key == "seed") cfg.seed = detail::parse_number<std::uint64_t>(key, value);
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "oracle_cutoff") cfg.oracle_cutoff = detail::parse_number<double>(key, value);
        else
            throw std::invalid_argument("parse_config: unknown key '" + key + "' at line " +
                                        std::to_string(lineno) + " (did you mean '" +
                                        detail::nearest_key(key) + "'?)");
    }
    cfg.validate();
    return cfg;
}

inline SimConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("parse_config: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

inline std::string serialize_config(const SimConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "[grid]\n"
        << "n = " << cfg.n << "\n"
        << "length = " << cfg.length << "\n"
        << "[initial]\n"
        << "initial_type = " << cfg.initial_type << "\n"
        << "amplitude = " << cfg.amplitude << "\n"
        << "width = " << cfg.width << "\n"
        << "carrier = " << cfg.carrier << "\n"
        << "center = " << cfg.center << "\n";
    if (!cfg.snapshot_path.empty()) out << "snapshot_path = " << cfg.snapshot_path << "\n";
    out << "[stepping]\n"
        << "dt = " << cfg.dt << "\n"
        << "t_end = " << cfg.t_end << "\n"
        << "n_max = " << cfg.n_max << "\n"
        << "dealias_factor = " << cfg.dealias_factor << "\n"
        << "oracle_cutoff = " << cfg.oracle_cutoff << "\n"
        << "[output]\n"
        << "output_stride = " << cfg.output_stride << "\n"
        << "diagnostics = " << cfg.diagnostics << "\n"
        << "guard_fraction = " << cfg.guard_fraction << "\n"
        << "seed = " << cfg.seed << "\n"
        << "output_dir = " << cfg.output_dir << "\n";
    return out.str();
}

//------------------------------------------------------------------------------
// Binary snapshots.
//------------------------------------------------------------------------------
namespace detail {

template <typename T>
inline void put_le(std::string& out, T v) {
    // Little-endian serialization of an integral or f64 value.
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
inline T get_le(const std::string& in, std::size_t& off, const std::string& what) {
    if (off + sizeof(T) > in.size())
        throw std::runtime_error("read_snapshot: truncated file while reading " + what +
                                 " at byte offset " + std::to_string(off));
    T v{};
    std::memcpy(&v, in.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

}  // namespace detail

inline constexpr std::uint32_t kSnapshotVersion = 1;

inline void write_snapshot(const SimState& state, const std::filesystem::path& path) {
    std::string out;
    out.reserve(32 + 16 * state.profile.grid.n_points);
    out.append("SQGF", 4);
    detail::put_le<std::uint32_t>(out, kSnapshotVersion);
    detail::put_le<std::uint64_t>(out, state.profile.grid.n_points);
    detail::put_le<double>(out, state.profile.grid.domain_length);
    detail::put_le<double>(out, state.t);
    for (const complex& c : state.profile.coefficients) {
        detail::put_le<double>(out, c.real());
        detail::put_le<double>(out, c.imag());
    }
    atomic_write(path, out);
}

inline SimState read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();

    std::size_t off = 0;
    if (data.size() < 4 || data.compare(0, 4, "SQGF") != 0)
        throw std::runtime_error("read_snapshot: bad magic (expected 'SQGF')");
    off = 4;
    const auto version = detail::get_le<std::uint32_t>(data, off, "version");
    if (version != kSnapshotVersion)
        throw std::runtime_error("read_snapshot: version mismatch (file has " +
                                 std::to_string(version) + ", expected " +
                                 std::to_string(kSnapshotVersion) + ")");
    const auto n = detail::get_le<std::uint64_t>(data, off, "grid size");
    const auto length = detail::get_le<double>(data, off, "domain length");
    const auto t = detail::get_le<double>(data, off, "time");

    SimState state;
    state.t = t;
    state.profile = SpectralField(FourierGrid(static_cast<std::size_t>(n), length));
    for (std::uint64_t j = 0; j < n; ++j) {
        const double re = detail::get_le<double>(data, off, "coefficient");
        const double im = detail::get_le<double>(data, off, "coefficient");
        state.profile.coefficients[static_cast<std::size_t>(j)] = complex(re, im);
    }
    if (off != data.size())
        throw std::runtime_error("read_snapshot: trailing bytes at offset " +
                                 std::to_string(off));
    if (conjugate_symmetry_defect(state.profile) > 1e-9)
        throw std::runtime_error("read_snapshot: conjugate symmetry violated beyond 1e-9");
    return state;
}

//------------------------------------------------------------------------------
// Run manifest.
//------------------------------------------------------------------------------
inline std::string sha1_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha1(), nullptr) != 1)
        throw std::runtime_error("sha1_hex: digest computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

inline std::string wall_time_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct RunManifest {
    std::string config_text;
    std::string config_hash;     // sha1 of config_text
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> emitted_files;
    std::string abort_reason;    // empty if clean

    static RunManifest begin(const SimConfig& cfg) {
        RunManifest m;
        m.config_text = serialize_config(cfg);
        m.config_hash = sha1_hex(m.config_text);
        m.started_at = wall_time_iso8601();
        return m;
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"config", config_text},
                              {"config_sha1", config_hash},
                              {"started_at", started_at},
                              {"finished_at", finished_at},
                              {"emitted_files", emitted_files},
                              {"abort_reason", abort_reason}};
    }

    void write(const std::filesystem::path& path) const {
        atomic_write(path, to_json().dump(2) + "\n");
    }
};

}  // namespace sqg
