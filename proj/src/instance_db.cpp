#include "ionqaoa/instance_db.hpp"

#include <charconv>
#include <fstream>
#include <mutex>
#include <sstream>

#include "ionqaoa/error.hpp"

namespace ionqaoa::opt {

namespace {

bool is_hex(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  return true;
}

}  // namespace

InstanceDB::InstanceDB(const InstanceDB& other) : entries_(other.snapshot()) {}

InstanceDB& InstanceDB::operator=(const InstanceDB& other) {
  if (this != &other) {
    auto copy = other.snapshot();
    std::unique_lock lock(mu_);
    entries_ = std::move(copy);
  }
  return *this;
}

InstanceDB InstanceDB::parse(const std::string& text) {
  InstanceDB db;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto bad = [&](const std::string& why) {
      fail(ErrorKind::kParse, "instance DB line " + std::to_string(line_no) + ": " + why);
    };
    const auto p1 = line.find(';');
    const auto p2 = p1 == std::string::npos ? p1 : line.find(';', p1 + 1);
    if (p2 == std::string::npos || line.find(';', p2 + 1) != std::string::npos)
      bad("expected three ';'-separated fields");
    const std::string key = line.substr(0, p1);
    const std::string prep = line.substr(p1 + 1, p2 - p1 - 1);
    const std::string depth = line.substr(p2 + 1);
    if (!is_hex(key)) bad("key is not lowercase hex");
    if (prep != "0" && prep != "1") bad("preparable must be 0 or 1");
    DbEntry e;
    e.preparable = prep == "1";
    if (depth != "-") {
      int d = 0;
      const auto res = std::from_chars(depth.data(), depth.data() + depth.size(), d);
      if (res.ec != std::errc{} || res.ptr != depth.data() + depth.size() || d < 1)
        bad("solved_depth must be a positive integer or '-'");
      e.solved_depth = d;
    }
    if (!db.entries_.emplace(key, e).second) bad("duplicate key");
  }
  return db;
}

InstanceDB InstanceDB::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::kIo, "cannot open instance DB " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

std::string InstanceDB::serialize() const {
  std::shared_lock lock(mu_);
  std::string out;
  for (const auto& [key, e] : entries_) {
    out += key;
    out += e.preparable ? ";1;" : ";0;";
    out += e.solved_depth ? std::to_string(*e.solved_depth) : "-";
    out += '\n';
  }
  return out;
}

void InstanceDB::save(const std::filesystem::path& path) const {
  const std::string text = serialize();
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) fail(ErrorKind::kIo, "cannot write " + tmp.string());
    os << text;
    if (!os) fail(ErrorKind::kIo, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::kIo, "cannot replace " + path.string() + ": " + ec.message());
}

std::optional<DbEntry> InstanceDB::lookup(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void InstanceDB::insert(const std::string& key, const DbEntry& entry) {
  if (!is_hex(key)) fail(ErrorKind::kDomain, "DB key must be lowercase hex");
  std::unique_lock lock(mu_);
  entries_[key] = entry;
}

std::size_t InstanceDB::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::map<std::string, DbEntry> InstanceDB::snapshot() const {
  std::shared_lock lock(mu_);
  return entries_;
}

std::string canonical_key(int n, const sk::DiagonalSpectrum& spec) {
  return sk::ground_key(n, spec.ground_indices);
}

std::optional<DbEntry> db_lookup(const InstanceDB& db, int n, const sk::DiagonalSpectrum& spec) {
  return db.lookup(canonical_key(n, spec));
}

void db_insert(InstanceDB& db, int n, const sk::DiagonalSpectrum& spec, const DbEntry& entry) {
  db.insert(canonical_key(n, spec), entry);
}

}  // namespace ionqaoa::opt
