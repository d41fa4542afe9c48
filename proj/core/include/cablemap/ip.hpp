#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace cablemap {

// An IPv4 or IPv6 address. IPv4 occupies the first 4 bytes; comparison and
// hashing cover (family, bytes) so v4/v6 never collide.
struct IpAddress {
  std::array<std::uint8_t, 16> bytes{};
  std::uint8_t family = 0;  // 4 or 6

  static std::optional<IpAddress> parse(std::string_view text);

  std::string to_string() const;

  bool is_ipv4() const { return family == 4; }

  // True for globally routable unicast addresses. Private, shared (CGNAT),
  // loopback, link-local, unique-local, multicast, unspecified, broadcast
  // and reserved ranges are all rejected; IPv4-mapped IPv6 addresses are
  // judged by their embedded IPv4 address.
  bool is_public_unicast() const;

  auto operator<=>(const IpAddress&) const = default;
};

// Unordered pair of distinct endpoints; stored with a < b so the pair itself
// is the identity.
struct IpLink {
  IpAddress a;
  IpAddress b;

  IpLink() = default;
  IpLink(const IpAddress& x, const IpAddress& y) {
    if (y < x) {
      a = y;
      b = x;
    } else {
      a = x;
      b = y;
    }
  }

  auto operator<=>(const IpLink&) const = default;
};

struct IpAddressHash {
  std::size_t operator()(const IpAddress& ip) const noexcept;
};

struct IpLinkHash {
  std::size_t operator()(const IpLink& link) const noexcept;
};

}  // namespace cablemap
