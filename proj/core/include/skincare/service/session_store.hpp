#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "skincare/assessment.hpp"
#include "skincare/routine.hpp"
#include "skincare/service/json_io.hpp"

namespace skincare::service {

struct Session {
  std::string session_id;
  Clock::time_point created_at;
  std::vector<SkinAssessment> assessments;  // append-only
  std::vector<Routine> routines;            // append-only, chronological
  friend bool operator==(const Session&, const Session&) = default;
};

json to_json(const Session& s, const Catalog* catalog = nullptr);

/// Sessions kept in memory and mirrored to an append-only JSON-lines log,
/// one record per event:
///   {"event":"session","session_id":...,"created_at":...}
///   {"event":"recommend","session_id":...,"assessment":{...},"routine":{...}}
/// The index is rebuilt from the log on construction. Every mutation is
/// serialised by one mutex and written as a single flushed line.
class SessionStore {
 public:
  /// No log path keeps everything in memory. Throws Error(Io) when the log
  /// cannot be opened for appending.
  explicit SessionStore(std::optional<std::filesystem::path> log_path = std::nullopt);

  Session create();
  std::optional<Session> get(const std::string& session_id) const;
  bool contains(const std::string& session_id) const;

  /// Appends the assessment and routine. The routine's created_at is
  /// stamped here and never precedes the session's previous event.
  /// Throws Error(UnknownSession).
  Routine record(const std::string& session_id, const SkinAssessment& assessment,
                 Routine routine);

  std::size_t size() const;
  /// Log lines ignored during replay (malformed or referring to unknown
  /// sessions).
  std::size_t skipped_on_replay() const { return skipped_; }

 private:
  void replay(const std::filesystem::path& path);
  void append_line(const json& record);
  Clock::time_point next_timestamp(const Session& s) const;

  mutable std::mutex mutex_;
  std::unordered_map<std::string, Session> sessions_;
  std::optional<std::filesystem::path> path_;
  std::ofstream out_;
  std::size_t skipped_ = 0;
};

/// 32 lowercase hex digits from the system random device.
std::string new_session_id();

}  // namespace skincare::service
