#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "rdoc/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "rdoc serializes raw little-endian words; big-endian hosts are unsupported");

namespace rdoc::io {

/// 64-bit FNV-1a, used as the corpus content hash embedded in every index section.
class Fnv1a {
 public:
  void update(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const void* data, std::size_t len) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
    if (!out_) throw Error(ErrorCode::IOError, "write failed");
    hash_.update(data, len);
    written_ += len;
  }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  void pod(const T& value) {
    bytes(&value, sizeof(T));
  }

  void u8(std::uint8_t v) { pod(v); }
  void u32(std::uint32_t v) { pod(v); }
  void u64(std::uint64_t v) { pod(v); }
  void f64(double v) { pod(v); }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  void vec(const std::vector<T>& v) {
    u64(v.size());
    if (!v.empty()) bytes(v.data(), v.size() * sizeof(T));
  }

  void str(const std::string& s) {
    u64(s.size());
    if (!s.empty()) bytes(s.data(), s.size());
  }

  void tag(const char (&t)[5]) { bytes(t, 4); }

  std::uint64_t hash() const { return hash_.digest(); }
  std::uint64_t written() const { return written_; }

 private:
  std::ostream& out_;
  Fnv1a hash_;
  std::uint64_t written_ = 0;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(void* data, std::size_t len) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in_.gcount()) != len)
      throw Error(ErrorCode::FormatError, "unexpected end of index data");
    hash_.update(data, len);
  }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  T pod() {
    T value;
    bytes(&value, sizeof(T));
    return value;
  }

  std::uint8_t u8() { return pod<std::uint8_t>(); }
  std::uint32_t u32() { return pod<std::uint32_t>(); }
  std::uint64_t u64() { return pod<std::uint64_t>(); }
  double f64() { return pod<double>(); }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  std::vector<T> vec() {
    const std::uint64_t size = u64();
    if (size > (std::uint64_t{1} << 40) / sizeof(T))
      throw Error(ErrorCode::FormatError, "implausible vector length");
    std::vector<T> v(size);
    if (size != 0) bytes(v.data(), size * sizeof(T));
    return v;
  }

  std::string str() {
    const std::uint64_t size = u64();
    if (size > (std::uint64_t{1} << 40)) throw Error(ErrorCode::FormatError, "implausible string length");
    std::string s(size, '\0');
    if (size != 0) bytes(s.data(), size);
    return s;
  }

  void expect_tag(const char (&t)[5]) {
    char buf[4];
    bytes(buf, 4);
    if (std::memcmp(buf, t, 4) != 0)
      throw Error(ErrorCode::FormatError, std::string("expected section tag ") + t);
  }

  std::uint64_t hash() const { return hash_.digest(); }

 private:
  std::istream& in_;
  Fnv1a hash_;
};

}  // namespace rdoc::io
