#include "cablemap/ip.hpp"

#include <arpa/inet.h>

#include <cstring>

namespace cablemap {

std::optional<IpAddress> IpAddress::parse(std::string_view text) {
  if (text.empty() || text.size() >= INET6_ADDRSTRLEN) {
    return std::nullopt;
  }
  char buf[INET6_ADDRSTRLEN];
  std::memcpy(buf, text.data(), text.size());
  buf[text.size()] = '\0';

  IpAddress out;
  in_addr v4{};
  if (inet_pton(AF_INET, buf, &v4) == 1) {
    out.family = 4;
    std::memcpy(out.bytes.data(), &v4, 4);
    return out;
  }
  in6_addr v6{};
  if (inet_pton(AF_INET6, buf, &v6) == 1) {
    out.family = 6;
    std::memcpy(out.bytes.data(), &v6, 16);
    return out;
  }
  return std::nullopt;
}

std::string IpAddress::to_string() const {
  char buf[INET6_ADDRSTRLEN] = {0};
  if (family == 4) {
    in_addr v4{};
    std::memcpy(&v4, bytes.data(), 4);
    inet_ntop(AF_INET, &v4, buf, sizeof(buf));
  } else {
    in6_addr v6{};
    std::memcpy(&v6, bytes.data(), 16);
    inet_ntop(AF_INET6, &v6, buf, sizeof(buf));
  }
  return buf;
}

namespace {

bool public_v4(const std::uint8_t* b) {
  const std::uint8_t a = b[0];
  if (a == 0 || a == 10 || a == 127) return false;          // this-net, private, loopback
  if (a == 100 && (b[1] & 0xC0) == 64) return false;        // 100.64/10 shared
  if (a == 169 && b[1] == 254) return false;                // link-local
  if (a == 172 && (b[1] & 0xF0) == 16) return false;        // 172.16/12
  if (a == 192 && b[1] == 168) return false;                // 192.168/16
  if (a == 198 && (b[1] & 0xFE) == 18) return false;        // 198.18/15 benchmarking
  if (a >= 224) return false;                               // multicast + reserved + broadcast
  return true;
}

bool is_v4_mapped(const std::array<std::uint8_t, 16>& b) {
  for (int i = 0; i < 10; ++i) {
    if (b[i] != 0) return false;
  }
  return b[10] == 0xFF && b[11] == 0xFF;
}

}  // namespace

bool IpAddress::is_public_unicast() const {
  if (family == 4) {
    return public_v4(bytes.data());
  }
  if (is_v4_mapped(bytes)) {
    return public_v4(bytes.data() + 12);
  }
  bool all_zero = true;
  for (std::uint8_t v : bytes) {
    if (v != 0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) return false;  // ::
  bool loopback = bytes[15] == 1;
  for (int i = 0; i < 15 && loopback; ++i) {
    loopback = bytes[i] == 0;
  }
  if (loopback) return false;                            // ::1
  if (bytes[0] == 0xFF) return false;                    // multicast
  if (bytes[0] == 0xFE && (bytes[1] & 0xC0) == 0x80) return false;  // link-local
  if ((bytes[0] & 0xFE) == 0xFC) return false;           // unique-local fc00::/7
  return true;
}

std::size_t IpAddressHash::operator()(const IpAddress& ip) const noexcept {
  // FNV-1a over family + bytes.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint8_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(ip.family);
  for (std::uint8_t v : ip.bytes) mix(v);
  return h;
}

std::size_t IpLinkHash::operator()(const IpLink& link) const noexcept {
  IpAddressHash h;
  return h(link.a) * 31 + h(link.b);
}

}  // namespace cablemap
