#include "unitlinked/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace unitlinked {

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

void OutputBundle::add(std::string name, std::string content) {
    files_.emplace_back(std::move(name), std::move(content));
}

std::string OutputBundle::manifest() const {
    std::string out = "file,bytes,fnv1a64\n";
    char hex[17];
    for (const auto& [name, content] : files_) {
        const std::uint64_t h = fnv1a64(content);
        for (int i = 0; i < 16; ++i)
            hex[i] = "0123456789abcdef"[(h >> (60 - 4 * i)) & 0xF];
        hex[16] = '\0';
        out += name + "," + std::to_string(content.size()) + "," + hex + "\n";
    }
    return out;
}

void OutputBundle::write(const std::string& dir) const {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir))
        throw std::invalid_argument("cannot create output directory: " + dir);
    const auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path path = fs::path(dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write " + path.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + path.string());
    };
    for (const auto& [name, content] : files_) emit(name, content);
    emit("manifest.csv", manifest());
}

}  // namespace unitlinked
