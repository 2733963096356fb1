#include "skincare/service/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "skincare/error.hpp"
#include "skincare/fingerprint.hpp"

namespace skincare::service {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::Format, "config: invalid value '" + value + "' for '" + key + "'");
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) bad(key, v);
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad(key, v);
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

EngineConfig EngineConfig::parse(std::istream& in) {
  EngineConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"seed", [&](auto& k, auto& v) { c.tsne.seed = c.mf.seed = to_uint(k, v); }},
      {"alpha", [&](auto& k, auto& v) {
         c.alpha = to_double(k, v);
         if (c.alpha < 0 || c.alpha > 1) bad(k, v);
       }},
      {"perplexity", [&](auto& k, auto& v) { c.tsne.perplexity = to_double(k, v); }},
      {"iterations", [&](auto& k, auto& v) { c.tsne.iterations = to_uint(k, v); }},
      {"exaggeration", [&](auto& k, auto& v) { c.tsne.exaggeration = to_double(k, v); }},
      {"exaggeration_iters", [&](auto& k, auto& v) { c.tsne.exaggeration_iters = to_uint(k, v); }},
      {"tsne_lr", [&](auto& k, auto& v) { c.tsne.learning_rate = to_double(k, v); }},
      {"tsne_momentum", [&](auto& k, auto& v) { c.tsne.momentum = to_double(k, v); }},
      {"tsne_final_momentum", [&](auto& k, auto& v) { c.tsne.final_momentum = to_double(k, v); }},
      {"momentum_switch_iter", [&](auto& k, auto& v) { c.tsne.momentum_switch_iter = to_uint(k, v); }},
      {"k", [&](auto& k, auto& v) { c.mf.k = to_uint(k, v); }},
      {"reg", [&](auto& k, auto& v) { c.mf.reg = to_double(k, v); }},
      {"lr", [&](auto& k, auto& v) { c.mf.learning_rate = to_double(k, v); }},
      {"momentum", [&](auto& k, auto& v) { c.mf.momentum = to_double(k, v); }},
      {"epochs", [&](auto& k, auto& v) { c.mf.epochs = to_uint(k, v); }},
      {"per_category", [&](auto& k, auto& v) {
         if (v == "true" || v == "1") c.per_category = true;
         else if (v == "false" || v == "0") c.per_category = false;
         else bad(k, v);
       }},
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Format, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) throw Error(ErrorCode::Format, "config: unknown key '" + key + "'");
    it->second(key, value);
  }
  return c;
}

EngineConfig EngineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
  return parse(in);
}

std::string EngineConfig::serialize() const {
  std::ostringstream out;
  out << "alpha = " << fmt(alpha) << '\n'
      << "epochs = " << mf.epochs << '\n'
      << "exaggeration = " << fmt(tsne.exaggeration) << '\n'
      << "exaggeration_iters = " << tsne.exaggeration_iters << '\n'
      << "iterations = " << tsne.iterations << '\n'
      << "k = " << mf.k << '\n'
      << "lr = " << fmt(mf.learning_rate) << '\n'
      << "momentum = " << fmt(mf.momentum) << '\n'
      << "momentum_switch_iter = " << tsne.momentum_switch_iter << '\n'
      << "per_category = " << (per_category ? "true" : "false") << '\n'
      << "perplexity = " << fmt(tsne.perplexity) << '\n'
      << "reg = " << fmt(mf.reg) << '\n'
      << "seed = " << tsne.seed << '\n'
      << "tsne_final_momentum = " << fmt(tsne.final_momentum) << '\n'
      << "tsne_lr = " << fmt(tsne.learning_rate) << '\n'
      << "tsne_momentum = " << fmt(tsne.momentum) << '\n';
  return out.str();
}

std::uint64_t EngineConfig::hash() const {
  Fingerprint fp;
  fp.bytes(serialize());
  fp.u64(mf.seed);
  return fp.value();
}

}  // namespace skincare::service
