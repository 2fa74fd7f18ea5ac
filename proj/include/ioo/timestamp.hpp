#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ioo {

/// UTC instant with millisecond resolution.
class Timestamp {
public:
    constexpr Timestamp() = default;
    static constexpr Timestamp from_unix_millis(std::int64_t ms) { return Timestamp(ms); }

    /// Accepts RFC 3339 date-times ("Z" or numeric offset, any number of
    /// fractional digits, truncated to milliseconds) and plain "YYYY-MM-DD"
    /// dates, which mean midnight UTC. Throws MalformedTimestamp.
    static Timestamp parse(std::string_view text);

    constexpr std::int64_t unix_millis() const { return ms_; }

    /// "YYYY-MM-DDTHH:MM:SS.mmmZ"
    std::string to_string() const;

    friend constexpr auto operator<=>(Timestamp, Timestamp) = default;

private:
    constexpr explicit Timestamp(std::int64_t ms) : ms_(ms) {}
    std::int64_t ms_ = 0;
};

}  // namespace ioo
