#include "ioo/store.hpp"

#include "ioo/wire.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

namespace ioo::store {

std::filesystem::path resolve_store_path(const std::optional<std::string>& flag,
                                         const std::optional<std::string>& env) {
    if (flag && !flag->empty()) {
        return *flag;
    }
    if (env && !env->empty()) {
        return *env;
    }
    return kDefaultStorePath;
}

KnowledgeGraph load(const std::filesystem::path& path, const vocab::Registry& registry) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        return KnowledgeGraph(registry);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ConfigError, "cannot read store " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto parsed = wire::parse_bundle(buf.str());
    if (parsed.bundle.store_format_version.value_or(kFormatVersion) > kFormatVersion) {
        throw Error(ErrorCode::ConfigError,
                    "store " + path.string() + " has unsupported format version " +
                        std::to_string(*parsed.bundle.store_format_version));
    }
    return wire::bundle_to_graph(parsed.bundle, registry).graph;
}

std::string snapshot_bytes(const KnowledgeGraph& graph) {
    auto bundle = wire::graph_to_bundle(graph);
    bundle.store_format_version = kFormatVersion;
    return wire::emit_bundle(bundle);
}

void save(const std::filesystem::path& path, const KnowledgeGraph& graph) {
    const auto bytes = snapshot_bytes(graph);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::ConfigError, "cannot write store " + tmp.string());
        }
        out << bytes;
        out.flush();
        if (!out) {
            throw Error(ErrorCode::ConfigError, "short write to " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::ConfigError, "cannot replace store " + path.string());
    }
}

Lock::Lock(std::filesystem::path store_path) : lock_path_(std::move(store_path)) {
    lock_path_ += ".lock";
    const int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        throw Error(ErrorCode::ConfigError,
                    "store is locked (" + lock_path_.string() + " exists) or not writable");
    }
    const auto pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
    ::close(fd);
}

Lock::~Lock() {
    std::error_code ec;
    std::filesystem::remove(lock_path_, ec);
}

}  // namespace ioo::store
