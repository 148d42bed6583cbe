#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace unitlinked {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t fnv1a64(const std::string& s);

/// Collects output files in memory, then writes them plus a manifest.csv
/// (file,bytes,fnv1a64) in one pass. Byte content is fully determined by the
/// inputs, so repeated runs produce identical files.
class OutputBundle {
  public:
    void add(std::string name, std::string content);
    void write(const std::string& dir) const;
    const std::vector<std::pair<std::string, std::string>>& files() const {
        return files_;
    }
    std::string manifest() const;

  private:
    std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace unitlinked
