#include "gpee/bitstream.hpp"

#include "gpee/errors.hpp"

namespace gpee {

BitStream::BitStream(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::uint8_t b : bits_)
    if (b > 1) throw Error(Errc::InvalidArgument, "bit value out of {0,1}");
}

BitStream BitStream::from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) throw Error(Errc::InvalidArgument, "bit_count exceeds byte buffer");
  BitStream s;
  s.bits_.reserve(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i)
    s.bits_.push_back((bytes[i / 8] >> (7 - i % 8)) & 1);
  return s;
}

void BitStream::append(int bit) {
  if (bit != 0 && bit != 1) throw Error(Errc::InvalidArgument, "bit value out of {0,1}");
  bits_.push_back(static_cast<std::uint8_t>(bit));
}

void BitStream::append_bits(const std::vector<std::uint8_t>& bits) {
  for (std::uint8_t b : bits) append(b);
}

void BitStream::append_uint(std::uint64_t value, int width) {
  if (width < 0 || width > 64) throw Error(Errc::InvalidArgument, "field width out of range");
  if (width < 64 && (value >> width) != 0)
    throw Error(Errc::InvalidArgument, "value does not fit field width");
  for (int i = width - 1; i >= 0; --i) bits_.push_back((value >> i) & 1);
}

int BitStream::read() {
  if (cursor_ >= bits_.size()) throw Error(Errc::BitstreamOverrun, "read past end of bitstream");
  return bits_[cursor_++];
}

std::uint64_t BitStream::read_uint(int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | static_cast<std::uint64_t>(read());
  return v;
}

std::vector<std::uint8_t> BitStream::to_bytes() const {
  std::vector<std::uint8_t> bytes((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) bytes[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
  return bytes;
}

}  // namespace gpee
