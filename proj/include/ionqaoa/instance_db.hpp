#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

#include "ionqaoa/sk.hpp"

namespace ionqaoa::opt {

struct DbEntry {
  bool preparable = false;
  std::optional<int> solved_depth;

  friend bool operator==(const DbEntry&, const DbEntry&) = default;
};

/// Ground-space cache keyed by the canonical ground-space key.
///
/// File format, one record per line: `key_hex;preparable;solved_depth`,
/// preparable in {0,1}, solved_depth an integer or `-`. Any malformed line
/// rejects the whole file. Saving writes a temporary and renames it.
class InstanceDB {
 public:
  InstanceDB() = default;
  InstanceDB(const InstanceDB& other);
  InstanceDB& operator=(const InstanceDB& other);

  static InstanceDB load(const std::filesystem::path& path);
  static InstanceDB parse(const std::string& text);
  void save(const std::filesystem::path& path) const;
  std::string serialize() const;

  std::optional<DbEntry> lookup(const std::string& key) const;
  void insert(const std::string& key, const DbEntry& entry);

  std::size_t size() const;
  std::map<std::string, DbEntry> snapshot() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, DbEntry> entries_;
};

std::string canonical_key(int n, const sk::DiagonalSpectrum& spec);
std::optional<DbEntry> db_lookup(const InstanceDB& db, int n, const sk::DiagonalSpectrum& spec);
void db_insert(InstanceDB& db, int n, const sk::DiagonalSpectrum& spec, const DbEntry& entry);

}  // namespace ionqaoa::opt
