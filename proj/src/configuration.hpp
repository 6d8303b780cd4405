#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace splbee {

// A total true/false assignment over features 1..F: one candidate product.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(int num_features) : bits_(num_features, 0) {}

  int feature_count() const { return static_cast<int>(bits_.size()); }
  bool selected(int feature) const { return bits_[feature - 1] != 0; }
  void set(int feature, bool value) { bits_[feature - 1] = value ? 1 : 0; }

  int selected_count() const {
    int n = 0;
    for (std::uint8_t b : bits_) n += b;
    return n;
  }

  // Bitstring with feature 1 first, '1' = selected.
  std::string to_bitstring() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) s[i] = '1';
    return s;
  }

  static Configuration from_bitstring(const std::string& s) {
    Configuration c(static_cast<int>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1')
        throw std::invalid_argument("configuration bitstring must be 0/1");
      c.bits_[i] = s[i] == '1' ? 1 : 0;
    }
    return c;
  }

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace splbee
