#pragma once

#include <cmath>
#include <cstdint>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace testing {

constexpr double pi = std::numbers::pi;

inline std::vector<double> uniform(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(g);
    return v;
}

inline double rel_l2(const std::vector<double>& a, const std::vector<double>& b, std::size_t lo, std::size_t hi) {
    double num = 0, den = 0;
    for (std::size_t k = lo; k < hi; ++k) {
        num += (a[k] - b[k]) * (a[k] - b[k]);
        den += b[k] * b[k];
    }
    return std::sqrt(num / den);
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b, std::size_t lo, std::size_t hi) {
    double ma = 0, mb = 0;
    const double n = static_cast<double>(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t k = lo; k < hi; ++k) {
        sab += (a[k] - ma) * (b[k] - mb);
        saa += (a[k] - ma) * (a[k] - ma);
        sbb += (b[k] - mb) * (b[k] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

inline std::filesystem::path temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("jade_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(p);
    return p;
}

inline void put16(std::ofstream& f, std::uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    f.write(b, 2);
}

inline void put32(std::ofstream& f, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) f.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

// Minimal RIFF/WAVE writer; frames are interleaved int16 when format == 1.
inline void write_wav(const std::filesystem::path& p, std::uint16_t format, std::uint16_t channels,
                      std::uint32_t rate, std::uint16_t bits, const std::vector<std::int16_t>& interleaved) {
    std::ofstream f(p, std::ios::binary);
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(interleaved.size() * 2);
    f.write("RIFF", 4);
    put32(f, 36 + data_bytes);
    f.write("WAVE", 4);
    f.write("fmt ", 4);
    put32(f, 16);
    put16(f, format);
    put16(f, channels);
    put32(f, rate);
    put32(f, rate * channels * bits / 8);
    put16(f, static_cast<std::uint16_t>(channels * bits / 8));
    put16(f, bits);
    f.write("data", 4);
    put32(f, data_bytes);
    for (auto s : interleaved) put16(f, static_cast<std::uint16_t>(s));
}

}  // namespace testing
