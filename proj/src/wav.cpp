#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "jade/io.hpp"

namespace jade::io {

namespace {

std::uint32_t u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t u16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | p[1] << 8); }

constexpr std::uint16_t format_pcm = 1;
constexpr std::uint16_t format_extensible = 0xFFFE;

}  // namespace

WavFile read_wav(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    const std::vector<unsigned char> b((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string name = path.string();
    if (b.size() < 12 || std::memcmp(b.data(), "RIFF", 4) != 0 || std::memcmp(b.data() + 8, "WAVE", 4) != 0)
        throw DataError(name + ": not a RIFF/WAVE file");

    bool have_fmt = false;
    std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
    std::uint32_t rate = 0;
    const unsigned char* data = nullptr;
    std::size_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= b.size()) {
        const unsigned char* h = b.data() + pos;
        const std::size_t size = u32(h + 4);
        const std::size_t body = pos + 8;
        const std::size_t avail = b.size() - body;
        if (std::memcmp(h, "fmt ", 4) == 0) {
            if (size < 16 || avail < 16) throw DataError(name + ": truncated fmt chunk");
            const unsigned char* f = b.data() + body;
            format = u16(f);
            channels = u16(f + 2);
            rate = u32(f + 4);
            block_align = u16(f + 12);
            bits = u16(f + 14);
            if (format == format_extensible && size >= 40 && avail >= 40) format = u16(f + 24);
            have_fmt = true;
        } else if (std::memcmp(h, "data", 4) == 0) {
            data = b.data() + body;
            data_size = std::min(size, avail);
        }
        pos = body + size + (size & 1);
    }
    if (!have_fmt) throw DataError(name + ": missing fmt chunk");
    if (format != format_pcm || bits != 16) throw DataError(name + ": unsupported encoding");
    if (channels == 0 || rate == 0 || block_align != channels * 2) throw DataError(name + ": malformed fmt chunk");
    if (!data) throw DataError(name + ": missing data chunk");

    const std::size_t frames = data_size / block_align;
    if (frames == 0) throw DataError(name + ": no samples");
    std::vector<double> x(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
            const auto raw = static_cast<std::int16_t>(u16(data + i * block_align + 2 * c));
            acc += static_cast<double>(raw) / 32768.0;
        }
        x[i] = acc / channels;
    }
    WavFile w{Signal(std::move(x), 1.0 / rate), channels, static_cast<int>(rate), {}};
    if (channels > 1)
        w.warnings.push_back(name + ": " + std::to_string(channels) + " channels downmixed to mono by averaging");
    return w;
}

}  // namespace jade::io
