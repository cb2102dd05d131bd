#pragma once

#include <cstdint>
#include <vector>

namespace gpee {

/// Ordered bit sequence with a read cursor. Bits are stored unpacked for clarity;
/// byte conversion is MSB-first.
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(std::vector<std::uint8_t> bits);

  static BitStream from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t bit_count);

  void append(int bit);
  void append_bits(const std::vector<std::uint8_t>& bits);
  /// Appends `width` bits of `value`, most significant first.
  void append_uint(std::uint64_t value, int width);

  /// Reads one bit at the cursor; throws BitstreamOverrun past the end.
  int read();
  std::uint64_t read_uint(int width);

  std::size_t size() const { return bits_.size(); }
  std::size_t cursor() const { return cursor_; }
  std::size_t remaining() const { return bits_.size() - cursor_; }
  bool exhausted() const { return cursor_ >= bits_.size(); }
  void rewind() { cursor_ = 0; }

  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::vector<std::uint8_t> to_bytes() const;  // zero-padded to a byte boundary

  friend bool operator==(const BitStream& a, const BitStream& b) { return a.bits_ == b.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t cursor_ = 0;
};

}  // namespace gpee
