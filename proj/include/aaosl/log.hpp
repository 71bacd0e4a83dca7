#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <utility>
#include <vector>

#include "aaosl/auth.hpp"
#include "aaosl/hash.hpp"
#include "aaosl/hoprel.hpp"
#include "aaosl/types.hpp"

namespace aaosl {

/// Everything a verifier needs to know about a log besides its contents.
struct LogParams {
  AuthScheme scheme{};
  const HopRelation* rel = &pow2_relation();
  Digest genesis{};  // h_star, the implicit digest at index 0
};

struct LogEntry {
  Index index = 0;
  Digest datum_digest{};
  Digest authenticator{};
};

struct AuditReport {
  std::vector<Index> mismatched;
  bool clean() const { return mismatched.empty(); }
};

/// Append-only authenticated log, persisted as a fixed-record binary file:
/// a 38-byte header (magic "AOSL", version, scheme byte, genesis digest)
/// followed by one 64-byte record per index (datum digest, authenticator);
/// the index is implicit in the record position. Records are flushed before
/// append returns. A process-level advisory lock serializes writers;
/// readers take no lock.
class LogStore {
 public:
  static constexpr char kMagic[4] = {'A', 'O', 'S', 'L'};
  static constexpr std::uint8_t kVersion = 0x01;
  static constexpr std::size_t kHeaderSize = 4 + 1 + 1 + 32;
  static constexpr std::size_t kRecordSize = 2 * kDigestSize;

  LogStore(const LogStore&) = delete;
  LogStore& operator=(const LogStore&) = delete;

  LogStore(LogStore&& other) noexcept { *this = std::move(other); }
  LogStore& operator=(LogStore&& other) noexcept {
    if (this != &other) {
      close_fd();
      fd_ = other.fd_;
      other.fd_ = -1;
      writable_ = other.writable_;
      params_ = std::move(other.params_);
      entries_ = std::move(other.entries_);
    }
    return *this;
  }

  ~LogStore() { close_fd(); }

  /// Creates a new log containing only the genesis entry.
  static LogStore init(const std::filesystem::path& path,
                       ByteView genesis_datum, AuthScheme scheme = {},
                       const HopRelation& rel = pow2_relation()) {
    int fd = ::open(path.c_str(), O_RDWR | O_CREAT | O_EXCL, 0644);
    if (fd < 0) {
      if (errno == EEXIST)
        throw Error(Errc::already_initialized,
                    "log already exists at " + path.string());
      throw Error(Errc::storage_io,
                  "cannot create " + path.string() + ": " + std::strerror(errno));
    }
    LogStore store(fd, /*writable=*/true);
    store.lock_writer(path);
    store.params_.scheme = std::move(scheme);
    store.params_.rel = &rel;
    store.params_.genesis = store.params_.scheme.hash(genesis_datum);

    ByteBuf header;
    header.insert(header.end(), kMagic, kMagic + 4);
    header.push_back(kVersion);
    header.push_back(static_cast<std::uint8_t>(store.params_.scheme.kind));
    append_digest(header, store.params_.genesis);
    store.write_at(0, header);

    LogEntry genesis{0, store.params_.genesis, store.params_.genesis};
    store.write_record(genesis);
    store.entries_.push_back(genesis);
    store.sync();
    return store;
  }

  static LogStore open(const std::filesystem::path& path, bool writable = true,
                       HashFn hash = sha256,
                       const HopRelation& rel = pow2_relation()) {
    int fd = ::open(path.c_str(), writable ? O_RDWR : O_RDONLY);
    if (fd < 0)
      throw Error(Errc::storage_io,
                  "cannot open " + path.string() + ": " + std::strerror(errno));
    LogStore store(fd, writable);
    if (writable) store.lock_writer(path);

    std::uint8_t header[kHeaderSize];
    if (::pread(fd, header, kHeaderSize, 0) !=
        static_cast<ssize_t>(kHeaderSize))
      throw Error(Errc::storage_corrupt, "log header truncated");
    if (std::memcmp(header, kMagic, 4) != 0)
      throw Error(Errc::bad_magic, "not a log file");
    if (header[4] != kVersion)
      throw Error(Errc::bad_version, "unsupported log version");
    if (header[5] != 0x01 && header[5] != 0x02)
      throw Error(Errc::bad_scheme, "unknown scheme byte in header");
    store.params_.scheme = AuthScheme{static_cast<AuthKind>(header[5]),
                                      std::move(hash)};
    store.params_.rel = &rel;
    std::copy(header + 6, header + kHeaderSize, store.params_.genesis.begin());

    struct stat st{};
    if (::fstat(fd, &st) != 0)
      throw Error(Errc::storage_io, std::strerror(errno));
    // a crashed writer can leave a partial tail record; ignore it
    Index n = (static_cast<std::uint64_t>(st.st_size) - kHeaderSize) /
              kRecordSize;
    if (n == 0) throw Error(Errc::storage_corrupt, "log has no genesis record");
    store.entries_.reserve(n);
    for (Index i = 0; i < n; ++i) store.entries_.push_back(store.read_record(i));
    if (store.entries_[0].authenticator != store.params_.genesis)
      throw Error(Errc::storage_corrupt, "genesis record disagrees with header");
    return store;
  }

  Index size() const { return entries_.size(); }
  const LogParams& params() const { return params_; }
  const AuthScheme& scheme() const { return params_.scheme; }
  const HopRelation& hop_relation() const { return *params_.rel; }
  Digest genesis() const { return params_.genesis; }

  /// Appends one datum; returns its index and authenticator, durable on
  /// return.
  std::pair<Index, Digest> append(ByteView datum) {
    if (!writable_) throw Error(Errc::storage_io, "log opened read-only");
    Index j = size();
    Digest datum_digest = params_.scheme.hash(datum);
    std::vector<Digest> deps;
    for (Index dep : params_.rel->deps_of(j))
      deps.push_back(lookup_digest(dep));
    Digest a = authenticate(params_.scheme, *params_.rel, j, datum_digest, deps);
    LogEntry entry{j, datum_digest, a};
    write_record(entry);
    sync();
    entries_.push_back(entry);
    return {j, a};
  }

  /// The stored authenticator at i (h_star at 0).
  Digest lookup_digest(Index i) const { return entry(i).authenticator; }

  Digest datum_digest(Index i) const { return entry(i).datum_digest; }

  const LogEntry& entry(Index i) const {
    if (i >= size())
      throw Error(Errc::out_of_range,
                  "index " + std::to_string(i) + " not in log of size " +
                      std::to_string(size()),
                  i);
    return entries_[i];
  }

  /// Recomputes every authenticator from the on-disk records and reports
  /// indexes whose stored entries disagree with the recomputation.
  AuditReport audit() const {
    AuditReport report;
    Index n = size();
    std::vector<Digest> rebuilt(n);
    for (Index i = 0; i < n; ++i) {
      LogEntry disk = read_record(i);
      if (i == 0) {
        rebuilt[0] = params_.genesis;
        if (disk.authenticator != params_.genesis ||
            disk.datum_digest != params_.genesis)
          report.mismatched.push_back(0);
        continue;
      }
      std::vector<Digest> deps;
      for (Index dep : params_.rel->deps_of(i)) deps.push_back(rebuilt[dep]);
      rebuilt[i] =
          authenticate(params_.scheme, *params_.rel, i, disk.datum_digest, deps);
      if (rebuilt[i] != disk.authenticator) report.mismatched.push_back(i);
    }
    return report;
  }

 private:
  explicit LogStore(int fd, bool writable) : fd_(fd), writable_(writable) {}

  void close_fd() {
    if (fd_ >= 0) {
      ::close(fd_);  // releases the advisory lock
      fd_ = -1;
    }
  }

  void lock_writer(const std::filesystem::path& path) {
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0)
      throw Error(Errc::log_locked,
                  "another writer holds " + path.string());
  }

  void write_at(std::uint64_t off, ByteView bytes) {
    if (::pwrite(fd_, bytes.data(), bytes.size(), off) !=
        static_cast<ssize_t>(bytes.size()))
      throw Error(Errc::storage_io, std::strerror(errno));
  }

  void write_record(const LogEntry& e) {
    ByteBuf rec;
    rec.reserve(kRecordSize);
    append_digest(rec, e.datum_digest);
    append_digest(rec, e.authenticator);
    write_at(kHeaderSize + e.index * kRecordSize, rec);
  }

  LogEntry read_record(Index i) const {
    std::uint8_t buf[kRecordSize];
    if (::pread(fd_, buf, kRecordSize, kHeaderSize + i * kRecordSize) !=
        static_cast<ssize_t>(kRecordSize))
      throw Error(Errc::storage_corrupt,
                  "record " + std::to_string(i) + " unreadable", i);
    LogEntry e;
    e.index = i;
    std::copy(buf, buf + kDigestSize, e.datum_digest.begin());
    std::copy(buf + kDigestSize, buf + kRecordSize, e.authenticator.begin());
    return e;
  }

  void sync() {
    if (::fdatasync(fd_) != 0)
      throw Error(Errc::storage_io, std::strerror(errno));
  }

  int fd_ = -1;
  bool writable_ = false;
  LogParams params_{};
  std::vector<LogEntry> entries_;
};

}  // namespace aaosl
