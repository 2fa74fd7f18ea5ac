#pragma once

#include "ioo/graph.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace ioo::store {

inline constexpr int kFormatVersion = 1;

/// Environment variable naming the default store path.
inline constexpr const char* kStoreEnvVar = "IOO_STORE";
inline constexpr const char* kDefaultStorePath = "ioo-store.json";

/// Flag value, else environment value, else the built-in default.
std::filesystem::path resolve_store_path(const std::optional<std::string>& flag,
                                         const std::optional<std::string>& env);

/// Reads a snapshot. A path that does not exist yet is an empty store.
/// Throws Error(ConfigError) for unreadable files and wire errors for
/// corrupt ones.
KnowledgeGraph load(const std::filesystem::path& path,
                    const vocab::Registry& registry = vocab::Registry::builtin());

/// Canonical snapshot bytes of a graph.
std::string snapshot_bytes(const KnowledgeGraph& graph);

/// Writes through a temporary file and renames it into place.
void save(const std::filesystem::path& path, const KnowledgeGraph& graph);

/// Exclusive advisory lock: "<store>.lock" created with O_EXCL, removed on
/// destruction. Throws Error(ConfigError) when the lock is already held.
class Lock {
public:
    explicit Lock(std::filesystem::path store_path);
    ~Lock();
    Lock(const Lock&) = delete;
    Lock& operator=(const Lock&) = delete;

private:
    std::filesystem::path lock_path_;
};

}  // namespace ioo::store
