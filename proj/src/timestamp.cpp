#include "ioo/timestamp.hpp"

#include "ioo/errors.hpp"

#include <cstdio>

namespace ioo {

namespace {

// Howard Hinnant's civil-calendar conversions (proleptic Gregorian).
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
    std::int64_t year;
    unsigned month;
    unsigned day;
};

constexpr CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return {y + (m <= 2), m, d};
}

constexpr bool is_leap(std::int64_t y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

constexpr unsigned days_in_month(std::int64_t y, unsigned m) {
    constexpr unsigned table[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : table[m - 1];
}

[[noreturn]] void malformed(std::string_view text) {
    throw Error(ErrorCode::MalformedTimestamp, "malformed timestamp '" + std::string(text) + "'");
}

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    int digits(std::size_t n) {
        if (pos_ + n > s_.size()) {
            malformed(s_);
        }
        int v = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const char c = s_[pos_ + i];
            if (c < '0' || c > '9') {
                malformed(s_);
            }
            v = v * 10 + (c - '0');
        }
        pos_ += n;
        return v;
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c) {
            malformed(s_);
        }
        ++pos_;
    }

    bool accept(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool at_digit() const { return pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9'; }
    bool done() const { return pos_ == s_.size(); }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Timestamp Timestamp::parse(std::string_view text) {
    Cursor c(text);
    const int year = c.digits(4);
    c.expect('-');
    const int month = c.digits(2);
    c.expect('-');
    const int day = c.digits(2);
    if (month < 1 || month > 12 || day < 1 ||
        static_cast<unsigned>(day) > days_in_month(year, static_cast<unsigned>(month))) {
        malformed(text);
    }
    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    if (c.done()) {
        return Timestamp(days * 86'400'000);
    }

    if (!c.accept('T') && !c.accept('t')) {
        malformed(text);
    }
    const int hour = c.digits(2);
    c.expect(':');
    const int minute = c.digits(2);
    c.expect(':');
    const int second = c.digits(2);
    // Leap second 60 is not representable; reject rather than silently roll over.
    if (hour > 23 || minute > 59 || second > 59) {
        malformed(text);
    }
    int millis = 0;
    if (c.accept('.')) {
        if (!c.at_digit()) {
            malformed(text);
        }
        int scale = 100;
        while (c.at_digit()) {
            const int d = c.digits(1);
            millis += d * scale;
            scale /= 10;
        }
    }

    std::int64_t offset_minutes = 0;
    if (c.accept('Z') || c.accept('z')) {
    } else {
        int sign = 0;
        if (c.accept('+')) {
            sign = 1;
        } else if (c.accept('-')) {
            sign = -1;
        } else {
            malformed(text);
        }
        const int oh = c.digits(2);
        c.expect(':');
        const int om = c.digits(2);
        if (oh > 23 || om > 59) {
            malformed(text);
        }
        offset_minutes = sign * (oh * 60 + om);
    }
    if (!c.done()) {
        malformed(text);
    }

    const std::int64_t seconds =
        days * 86'400 + hour * 3'600 + minute * 60 + second - offset_minutes * 60;
    return Timestamp(seconds * 1000 + millis);
}

std::string Timestamp::to_string() const {
    std::int64_t days = ms_ / 86'400'000;
    std::int64_t rem = ms_ % 86'400'000;
    if (rem < 0) {
        rem += 86'400'000;
        --days;
    }
    const auto date = civil_from_days(days);
    const auto hour = rem / 3'600'000;
    const auto minute = rem / 60'000 % 60;
    const auto second = rem / 1000 % 60;
    const auto millis = rem % 1000;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ",
                  static_cast<long long>(date.year), date.month, date.day,
                  static_cast<long long>(hour), static_cast<long long>(minute),
                  static_cast<long long>(second), static_cast<long long>(millis));
    return buf;
}

}  // namespace ioo
