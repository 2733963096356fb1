#include "skincare/service/session_store.hpp"

#include <algorithm>
#include <random>

#include "skincare/error.hpp"
#include "skincare/fingerprint.hpp"

namespace skincare::service {

json to_json(const Session& s, const Catalog* catalog) {
  json assessments = json::array();
  for (const auto& a : s.assessments) assessments.push_back(to_json(a));
  json routines = json::array();
  for (const auto& r : s.routines) routines.push_back(to_json(r, catalog));
  return {{"session_id", s.session_id},
          {"created_at", format_rfc3339(s.created_at)},
          {"assessments", std::move(assessments)},
          {"routines", std::move(routines)}};
}

std::string new_session_id() {
  std::random_device rd;
  auto draw = [&rd] {
    return (static_cast<std::uint64_t>(rd()) << 32) | static_cast<std::uint64_t>(rd());
  };
  return to_hex(draw()) + to_hex(draw());
}

SessionStore::SessionStore(std::optional<std::filesystem::path> log_path)
    : path_(std::move(log_path)) {
  if (!path_) return;
  if (path_->has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_->parent_path(), ec);
  }
  if (std::filesystem::exists(*path_)) replay(*path_);
  out_.open(*path_, std::ios::app | std::ios::binary);
  if (!out_) throw Error(ErrorCode::Io, "cannot open session log '" + path_->string() + "'");
}

void SessionStore::replay(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read session log '" + path.string() + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json rec = json::parse(line);
      const std::string event = rec.at("event").get<std::string>();
      const std::string id = rec.at("session_id").get<std::string>();
      if (event == "session") {
        if (sessions_.count(id)) {
          ++skipped_;
          continue;
        }
        Session s;
        s.session_id = id;
        s.created_at = parse_rfc3339(rec.at("created_at").get<std::string>());
        sessions_.emplace(id, std::move(s));
      } else if (event == "recommend") {
        auto it = sessions_.find(id);
        if (it == sessions_.end()) {
          ++skipped_;
          continue;
        }
        SkinAssessment a = assessment_from_json(rec.at("assessment"));
        Routine r = routine_from_json(rec.at("routine"));
        it->second.assessments.push_back(a);
        it->second.routines.push_back(std::move(r));
      } else {
        ++skipped_;
      }
    } catch (const std::exception&) {
      // A torn final line from a crash mid-append lands here.
      ++skipped_;
    }
  }
}

void SessionStore::append_line(const json& record) {
  if (!path_) return;
  const std::string line = record.dump() + "\n";
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) throw Error(ErrorCode::Io, "cannot append to session log '" + path_->string() + "'");
}

Clock::time_point SessionStore::next_timestamp(const Session& s) const {
  Clock::time_point t = truncate_to_micros(Clock::now());
  Clock::time_point last = s.created_at;
  if (!s.routines.empty()) last = std::max(last, s.routines.back().created_at);
  return std::max(t, last);
}

Session SessionStore::create() {
  std::lock_guard lock(mutex_);
  Session s;
  do {
    s.session_id = new_session_id();
  } while (sessions_.count(s.session_id));
  s.created_at = truncate_to_micros(Clock::now());
  append_line({{"event", "session"},
               {"session_id", s.session_id},
               {"created_at", format_rfc3339(s.created_at)}});
  sessions_.emplace(s.session_id, s);
  return s;
}

std::optional<Session> SessionStore::get(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) return std::nullopt;
  return it->second;
}

bool SessionStore::contains(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  return sessions_.count(session_id) != 0;
}

Routine SessionStore::record(const std::string& session_id, const SkinAssessment& assessment,
                             Routine routine) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::UnknownSession, "unknown session '" + session_id + "'");
  }
  routine.created_at = next_timestamp(it->second);
  append_line({{"event", "recommend"},
               {"session_id", session_id},
               {"assessment", to_json(assessment)},
               {"routine", to_json(routine)}});
  it->second.assessments.push_back(assessment);
  it->second.routines.push_back(routine);
  return routine;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

}  // namespace skincare::service
