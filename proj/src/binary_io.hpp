#pragma once

// Little-endian writer/reader with a running FNV-1a checksum, shared by the
// GPYT and GPYW cache formats.

#include "gpylab/error.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>

namespace gpylab::detail {

class Fnv1a {
public:
    void update(const unsigned char* p, std::size_t n) noexcept {
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    std::uint64_t value() const noexcept { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

template <class T>
std::array<unsigned char, sizeof(T)> to_le(T v) {
    std::array<unsigned char, sizeof(T)> b{};
    std::uint64_t bits = 0;
    if constexpr (sizeof(T) == 8)
        bits = std::bit_cast<std::uint64_t>(v);
    else if constexpr (sizeof(T) == 4)
        bits = std::bit_cast<std::uint32_t>(v);
    else
        bits = static_cast<std::uint8_t>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    return b;
}

class BinaryWriter {
public:
    explicit BinaryWriter(std::ostream& out) : out_(out) {}

    void bytes(const unsigned char* p, std::size_t n) {
        out_.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
        if (!out_) fail(ErrorKind::io, "write failed");
        sum_.update(p, n);
    }
    template <class T>
    void put(T v) {
        auto b = to_le(v);
        bytes(b.data(), b.size());
    }
    void magic(const char (&m)[5]) { bytes(reinterpret_cast<const unsigned char*>(m), 4); }
    // Checksum trailer; not itself hashed.
    void finish() {
        auto b = to_le(sum_.value());
        out_.write(reinterpret_cast<const char*>(b.data()), 8);
        if (!out_) fail(ErrorKind::io, "write failed");
    }

private:
    std::ostream& out_;
    Fnv1a sum_;
};

class BinaryReader {
public:
    explicit BinaryReader(std::istream& in) : in_(in) {}

    void bytes(unsigned char* p, std::size_t n) {
        in_.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n) fail(ErrorKind::cache_corrupt, "truncated cache file");
        sum_.update(p, n);
    }
    template <class T>
    T get() {
        std::array<unsigned char, sizeof(T)> b{};
        bytes(b.data(), b.size());
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) bits |= std::uint64_t{b[i]} << (8 * i);
        if constexpr (sizeof(T) == 8)
            return std::bit_cast<T>(bits);
        else if constexpr (sizeof(T) == 4)
            return std::bit_cast<T>(static_cast<std::uint32_t>(bits));
        else
            return static_cast<T>(static_cast<std::uint8_t>(bits));
    }
    void expect_magic(const char (&m)[5]) {
        unsigned char b[4];
        bytes(b, 4);
        if (std::memcmp(b, m, 4) != 0) fail(ErrorKind::cache_corrupt, std::string("bad magic, expected ") + m);
    }
    void verify() {
        std::uint64_t expected = sum_.value();
        unsigned char b[8];
        in_.read(reinterpret_cast<char*>(b), 8);
        if (in_.gcount() != 8) fail(ErrorKind::cache_corrupt, "missing checksum");
        std::uint64_t stored = 0;
        for (int i = 0; i < 8; ++i) stored |= std::uint64_t{b[i]} << (8 * i);
        if (stored != expected) fail(ErrorKind::cache_corrupt, "checksum mismatch");
    }

private:
    std::istream& in_;
    Fnv1a sum_;
};

}  // namespace gpylab::detail
