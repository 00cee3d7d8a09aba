#ifndef UBP_CLI_CACHE_HPP_
#define UBP_CLI_CACHE_HPP_

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include <openssl/evp.h>

#include "json.hpp"

#include "../exception.hpp"

namespace ubp::cli {

  // Bumped whenever a cached payload format or its computation changes.
  inline constexpr char const* code_version = "1";

  inline std::string sha256_hex(std::string const& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int  length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
      throw Error(error_kind::invalid_argument, "SHA-256 failed");
    }
    static char const hex[] = "0123456789abcdef";
    std::string       out;
    for (unsigned int i = 0; i < length; ++i) {
      out += hex[digest[i] >> 4];
      out += hex[digest[i] & 0xf];
    }
    return out;
  }

  struct CacheEntry {
    int         k = 0;
    std::string kind;  // hasse, submonoid-lattice or counts
    std::string payload;
    std::string checksum;

    static CacheEntry make(int k, std::string kind, std::string payload) {
      CacheEntry e{k, std::move(kind), std::move(payload), {}};
      e.checksum = sha256_hex(e.payload);
      return e;
    }

    bool valid() const {
      return checksum == sha256_hex(payload);
    }

    std::string serialize() const {
      nlohmann::ordered_json j;
      j["k"]        = k;
      j["kind"]     = kind;
      j["version"]  = code_version;
      j["checksum"] = checksum;
      j["payload"]  = payload;
      return j.dump() + "\n";
    }

    static std::optional<CacheEntry> deserialize(std::string const& text) {
      auto const j = nlohmann::json::parse(text, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        return std::nullopt;
      }
      try {
        if (j.at("version").get<std::string>() != code_version) {
          return std::nullopt;
        }
        return CacheEntry{j.at("k").get<int>(), j.at("kind").get<std::string>(),
                          j.at("payload").get<std::string>(), j.at("checksum").get<std::string>()};
      } catch (nlohmann::json::exception const&) {
        return std::nullopt;
      }
    }
  };

  // One file per (kind, k, code version). Unreadable, stale or corrupt
  // entries count as misses; failures to write are ignored.
  class Cache {
   public:
    explicit Cache(std::filesystem::path dir, bool enabled = true)
        : _dir(std::move(dir)), _enabled(enabled) {}

    static Cache from_environment(bool enabled = true) {
      char const* dir = std::getenv("UBP_CACHE_DIR");
      return Cache(dir != nullptr && *dir != '\0' ? dir : ".ubp-cache", enabled);
    }

    std::filesystem::path const& directory() const noexcept {
      return _dir;
    }

    bool enabled() const noexcept {
      return _enabled;
    }

    std::filesystem::path path_for(std::string const& kind, int k) const {
      return _dir / (kind + "-k" + std::to_string(k) + "-v" + code_version + ".json");
    }

    std::optional<CacheEntry> load(std::string const& kind, int k) const {
      if (!_enabled) {
        return std::nullopt;
      }
      std::ifstream in(path_for(kind, k), std::ios::binary);
      if (!in) {
        return std::nullopt;
      }
      std::ostringstream buffer;
      buffer << in.rdbuf();
      auto entry = CacheEntry::deserialize(buffer.str());
      if (!entry || entry->kind != kind || entry->k != k || !entry->valid()) {
        return std::nullopt;
      }
      return entry;
    }

    void store(CacheEntry const& entry) const {
      if (!_enabled) {
        return;
      }
      std::error_code ec;
      std::filesystem::create_directories(_dir, ec);
      if (ec) {
        return;
      }
      auto const target = path_for(entry.kind, entry.k);
      auto       tmp    = target;
      tmp += ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
          return;
        }
        out << entry.serialize();
        if (!out) {
          return;
        }
      }
      std::filesystem::rename(tmp, target, ec);
    }

    // The cached payload when present and intact, otherwise compute() is
    // run and its result stored.
    template <class Compute>
    std::string get_or_compute(std::string const& kind, int k, Compute&& compute,
                               bool* hit = nullptr) const {
      if (auto entry = load(kind, k)) {
        if (hit != nullptr) {
          *hit = true;
        }
        return entry->payload;
      }
      if (hit != nullptr) {
        *hit = false;
      }
      auto payload = std::string(compute());
      store(CacheEntry::make(k, kind, payload));
      return payload;
    }

   private:
    std::filesystem::path _dir;
    bool                  _enabled = true;
  };

}  // namespace ubp::cli

#endif  // UBP_CLI_CACHE_HPP_
