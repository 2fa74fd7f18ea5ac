#include "wire_codec.hpp"

#include "ioo/errors.hpp"

#include <limits>

namespace ioo::wire::detail {

nlohmann::json encode_value(const std::string& v) { return v; }
nlohmann::json encode_value(const Timestamp& v) { return v.to_string(); }
nlohmann::json encode_value(std::int64_t v) { return v; }
nlohmann::json encode_value(bool v) { return v; }
nlohmann::json encode_value(double v) { return v; }

nlohmann::json encode_value(const MediaReference& v) {
    auto out = nlohmann::json::object();
    fields(v, [&](std::string_view key, const auto& member) { encode_field(out, key, member); });
    return out;
}

void decode_value(const nlohmann::json& j, std::string_view key, std::string& out) {
    if (!j.is_string()) {
        throw DecodeError{std::string(key), "expected a string"};
    }
    out = j.get<std::string>();
}

void decode_value(const nlohmann::json& j, std::string_view key, Timestamp& out) {
    if (!j.is_string()) {
        throw DecodeError{std::string(key), "expected an RFC 3339 timestamp string"};
    }
    try {
        out = Timestamp::parse(j.get_ref<const std::string&>());
    } catch (const Error& e) {
        throw DecodeError{std::string(key), e.what()};
    }
}

void decode_value(const nlohmann::json& j, std::string_view key, std::int64_t& out) {
    if (j.is_number_unsigned()) {
        const auto u = j.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            throw DecodeError{std::string(key), "integer out of range"};
        }
        out = static_cast<std::int64_t>(u);
        return;
    }
    if (!j.is_number_integer()) {
        throw DecodeError{std::string(key), "expected an integer"};
    }
    out = j.get<std::int64_t>();
}

void decode_value(const nlohmann::json& j, std::string_view key, bool& out) {
    if (!j.is_boolean()) {
        throw DecodeError{std::string(key), "expected a boolean"};
    }
    out = j.get<bool>();
}

void decode_value(const nlohmann::json& j, std::string_view key, double& out) {
    if (!j.is_number()) {
        throw DecodeError{std::string(key), "expected a number"};
    }
    out = j.get<double>();
}

void decode_value(const nlohmann::json& j, std::string_view key, MediaReference& out) {
    if (!j.is_object()) {
        throw DecodeError{std::string(key), "expected a media reference object"};
    }
    std::size_t known = 0;
    fields(out, [&](std::string_view sub, auto& member) {
        auto it = j.find(std::string(sub));
        if (it != j.end() && !it->is_null()) {
            ++known;
            try {
                decode_field(*it, sub, member);
            } catch (const DecodeError& e) {
                throw DecodeError{std::string(key) + "." + e.field, e.message};
            }
        }
    });
    if (!j.contains("url")) {
        throw DecodeError{std::string(key) + ".url", "media reference needs a url"};
    }
    std::size_t non_null = 0;
    for (const auto& [k, v] : j.items()) {
        non_null += v.is_null() ? 0 : 1;
    }
    if (known != non_null) {
        throw DecodeError{std::string(key), "media reference has unrecognized keys"};
    }
}

}  // namespace ioo::wire::detail
