#include "skincare/service/classifier_adapter.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "skincare/error.hpp"
#include "skincare/service/json_io.hpp"
#include "skincare/service/session_store.hpp"

namespace skincare::service {

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

struct TempFile {
  std::filesystem::path path;
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

}  // namespace

SubprocessClassifier::SubprocessClassifier(std::string command) : command_(std::move(command)) {
  if (command_.empty()) throw Error(ErrorCode::InvalidArgument, "classifier command is empty");
}

SkinAssessment SubprocessClassifier::classify(const std::string& image_bytes,
                                              std::optional<SkinType> skin_type) const {
  TempFile tmp{std::filesystem::temp_directory_path() / ("skincare-upload-" + new_session_id())};
  {
    std::ofstream f(tmp.path, std::ios::binary);
    f.write(image_bytes.data(), static_cast<std::streamsize>(image_bytes.size()));
    if (!f) throw Error(ErrorCode::Io, "cannot write upload to '" + tmp.path.string() + "'");
  }
  const std::string cmd = command_ + " " + shell_quote(tmp.path.string());
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(::popen(cmd.c_str(), "r"), ::pclose);
  if (!pipe) throw Error(ErrorCode::Io, "cannot start classifier '" + command_ + "'");
  std::string output;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe.get())) output.append(buf, got);
  const int status = ::pclose(pipe.release());
  if (status != 0) {
    throw Error(ErrorCode::Io, "classifier exited with status " + std::to_string(status));
  }
  json j;
  try {
    j = json::parse(output);
  } catch (const json::exception&) {
    throw Error(ErrorCode::Format, "classifier output is not JSON");
  }
  if (j.is_object() && !j.contains("skin_type") && skin_type) {
    j["skin_type"] = std::string(key(*skin_type));
  }
  SkinAssessment a = assessment_from_json(j);
  a.source = AssessmentSource::Classifier;
  return a;
}

}  // namespace skincare::service
