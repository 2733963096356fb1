#include "skincare/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include "skincare/csv.hpp"
#include "skincare/error.hpp"
#include "skincare/fingerprint.hpp"

namespace skincare {
namespace {

constexpr std::array<std::string_view, 13> kCanonicalKeys{
    "id",     "label",      "issue", "brand", "name",      "ingredients",
    "combination", "dry",   "normal", "oily", "sensitive", "price",
    "rank"};

bool is_blank(unsigned char c) { return std::isspace(c) != 0; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_blank(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_blank(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Lowercase + collapse whitespace runs to one space + trim.
std::string canonical_token(std::string_view fragment) {
  std::string out;
  bool pending_space = false;
  for (char ch : fragment) {
    auto c = static_cast<unsigned char>(ch);
    if (is_blank(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

bool is_canonical_token(const std::string& token) {
  return !token.empty() && canonical_token(token) == token &&
         token.find_first_of(",;") == std::string::npos;
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::MalformedCsv,
              "line " + std::to_string(line) + ": " + what);
}

bool parse_flag(const std::string& raw, std::size_t line, std::string_view column) {
  const std::string v = lower(trim(raw));
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  malformed(line, "column '" + std::string(column) + "' expects 1/0/true/false, got '" + raw + "'");
}

std::optional<double> parse_decimal(const std::string& raw, std::size_t line,
                                    std::string_view column, double lo, double hi) {
  const std::string v = trim(raw);
  if (v.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(value) ||
      value < lo || value > hi) {
    malformed(line, "column '" + std::string(column) + "' has invalid value '" + raw + "'");
  }
  return value;
}

std::string format_decimal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::uint64_t compute_fingerprint(const std::vector<Product>& products) {
  Fingerprint fp;
  fp.u64(static_cast<std::uint64_t>(products.size()));
  for (const auto& p : products) {
    fp.u64(p.id);
    fp.u64(static_cast<std::uint64_t>(index_of(p.category)));
    fp.u64(p.issue ? static_cast<std::uint64_t>(index_of(*p.issue)) : 0xffULL);
    fp.add_field(p.brand);
    fp.add_field(p.name);
    fp.u64(static_cast<std::uint64_t>(p.ingredients.size()));
    for (const auto& t : p.ingredients) fp.add_field(t);
    for (bool f : p.suitability) fp.u64(static_cast<std::uint64_t>(f));
    fp.u64(static_cast<std::uint64_t>(p.price.has_value()));
    if (p.price) fp.real(*p.price);
    fp.u64(static_cast<std::uint64_t>(p.rank.has_value()));
    if (p.rank) fp.real(*p.rank);
  }
  return fp.value();
}

}  // namespace

bool iequals(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

std::vector<std::string> parse_ingredients(std::string_view raw) {
  std::vector<std::string> tokens;
  std::unordered_set<std::string> seen;
  std::size_t start = 0;
  while (start <= raw.size()) {
    std::size_t end = raw.find_first_of(",;", start);
    if (end == std::string_view::npos) end = raw.size();
    std::string token = canonical_token(raw.substr(start, end - start));
    if (!token.empty() && seen.insert(token).second) {
      tokens.push_back(std::move(token));
    }
    start = end + 1;
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// ColumnMapping

ColumnMapping ColumnMapping::canonical() {
  ColumnMapping m;
  for (auto k : kCanonicalKeys) m.columns_[std::string(k)] = std::string(k);
  return m;
}

ColumnMapping ColumnMapping::parse(std::istream& in) {
  ColumnMapping m = canonical();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Format, "column mapping line " + std::to_string(lineno) +
                                         ": expected key = column");
    }
    m.set(lower(trim(line.substr(0, eq))), trim(line.substr(eq + 1)));
  }
  return m;
}

ColumnMapping ColumnMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open column mapping " + path.string());
  return parse(in);
}

const std::string& ColumnMapping::source_for(const std::string& key) const {
  auto it = columns_.find(key);
  if (it == columns_.end()) {
    throw Error(ErrorCode::InvalidArgument, "unknown catalog column key '" + key + "'");
  }
  return it->second;
}

void ColumnMapping::set(const std::string& key, std::string column) {
  if (std::find(kCanonicalKeys.begin(), kCanonicalKeys.end(), key) == kCanonicalKeys.end()) {
    throw Error(ErrorCode::Format, "unknown catalog column key '" + key + "'");
  }
  if (column.empty()) {
    throw Error(ErrorCode::Format, "empty column name for key '" + key + "'");
  }
  columns_[key] = std::move(column);
}

// ---------------------------------------------------------------------------
// Catalog

Catalog::Catalog(std::vector<Product> products, LoadReport report)
    : products_(std::move(products)), report_(report) {
  if (products_.empty()) throw Error(ErrorCode::EmptyCatalog, "catalog has no products");
  for (std::size_t i = 0; i < products_.size(); ++i) {
    const Product& p = products_[i];
    if (p.id == 0) throw Error(ErrorCode::InvalidValue, "product ids must be positive");
    if (trim(p.brand).empty() || trim(p.name).empty()) {
      throw Error(ErrorCode::InvalidValue,
                  "product " + std::to_string(p.id) + " has an empty brand or name");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& t : p.ingredients) {
      if (!is_canonical_token(t) || !seen.insert(t).second) {
        throw Error(ErrorCode::InvalidValue, "product " + std::to_string(p.id) +
                                                 " has non-canonical ingredient '" + t + "'");
      }
    }
    if (p.price && (*p.price < 0 || !std::isfinite(*p.price))) {
      throw Error(ErrorCode::InvalidValue, "negative price on product " + std::to_string(p.id));
    }
    if (p.rank && !(*p.rank >= 0 && *p.rank <= 5)) {
      throw Error(ErrorCode::InvalidValue, "rank outside [0,5] on product " + std::to_string(p.id));
    }
    if (!by_id_.emplace(p.id, i).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate product id " + std::to_string(p.id));
    }
  }
  fingerprint_ = compute_fingerprint(products_);
}

std::optional<std::size_t> Catalog::position(ProductId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

const Product* Catalog::find(ProductId id) const {
  auto pos = position(id);
  return pos ? &products_[*pos] : nullptr;
}

const Product& Catalog::at(ProductId id) const {
  if (const Product* p = find(id)) return *p;
  throw Error(ErrorCode::UnknownProduct, "unknown product id " + std::to_string(id));
}

bool Catalog::has_brand(std::string_view brand) const {
  return std::any_of(products_.begin(), products_.end(),
                     [&](const Product& p) { return iequals(p.brand, brand); });
}

// ---------------------------------------------------------------------------
// Loading

Catalog load_catalog(std::istream& source, const ColumnMapping& mapping) {
  std::vector<csv::Row> rows = csv::read(source);
  if (rows.empty()) throw Error(ErrorCode::MalformedCsv, "missing header row");

  const csv::Row& header = rows.front();
  std::map<std::string, std::size_t> column_of;  // canonical key -> index
  for (auto key : kCanonicalKeys) {
    const std::string& wanted = mapping.source_for(std::string(key));
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
      if (iequals(trim(header.fields[i]), wanted)) {
        column_of[std::string(key)] = i;
        break;
      }
    }
  }
  for (auto required : {"label", "brand", "name", "ingredients", "combination", "dry",
                        "normal", "oily", "sensitive"}) {
    if (!column_of.count(required)) {
      throw Error(ErrorCode::MalformedCsv,
                  "missing required column '" + mapping.source_for(required) + "'");
    }
  }
  auto col = [&](const char* key) -> std::optional<std::size_t> {
    auto it = column_of.find(key);
    if (it == column_of.end()) return std::nullopt;
    return it->second;
  };
  const auto id_col = col("id");
  const auto issue_col = col("issue");
  const auto price_col = col("price");
  const auto rank_col = col("rank");
  constexpr std::array<const char*, kSkinTypeCount> flag_keys{
      "combination", "dry", "normal", "oily", "sensitive"};

  LoadReport report;
  std::vector<Product> products;
  std::set<std::tuple<std::string, std::string, Category>> seen_triples;

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    ++report.rows_read;
    if (row.fields.size() != header.fields.size()) {
      malformed(row.line, "expected " + std::to_string(header.fields.size()) +
                              " fields, found " + std::to_string(row.fields.size()));
    }
    auto field = [&](std::size_t i) -> const std::string& { return row.fields[i]; };

    auto category = try_parse_category(trim(field(*col("label"))));
    if (!category) {
      ++report.skipped_unknown_category;
      continue;
    }

    Product p;
    p.category = *category;
    p.brand = trim(field(*col("brand")));
    p.name = trim(field(*col("name")));
    if (p.brand.empty()) malformed(row.line, "empty brand");
    if (p.name.empty()) malformed(row.line, "empty name");
    p.ingredients = parse_ingredients(field(*col("ingredients")));
    for (std::size_t t = 0; t < kSkinTypeCount; ++t) {
      p.suitability[t] = parse_flag(field(*col(flag_keys[t])), row.line, flag_keys[t]);
    }
    if (issue_col) {
      const std::string raw = trim(field(*issue_col));
      if (!raw.empty()) {
        auto concern = try_parse_concern(raw);
        if (!concern) malformed(row.line, "unknown issue '" + raw + "'");
        p.issue = *concern;
      }
    }
    if (price_col) p.price = parse_decimal(field(*price_col), row.line, "price", 0, HUGE_VAL);
    if (rank_col) p.rank = parse_decimal(field(*rank_col), row.line, "rank", 0, 5);
    if (id_col) {
      const std::string raw = trim(field(*id_col));
      std::uint64_t id = 0;
      auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), id);
      if (ec != std::errc{} || ptr != raw.data() + raw.size() || id == 0) {
        malformed(row.line, "id must be a positive integer, got '" + raw + "'");
      }
      p.id = id;
    }

    if (!seen_triples.emplace(lower(p.brand), lower(p.name), p.category).second) {
      ++report.collapsed_duplicates;
      continue;
    }
    products.push_back(std::move(p));
  }

  if (products.empty()) throw Error(ErrorCode::EmptyCatalog, "catalog has no valid rows");
  if (!id_col) {
    for (std::size_t i = 0; i < products.size(); ++i) products[i].id = i + 1;
  }
  return Catalog(std::move(products), report);
}

Catalog load_catalog(const std::filesystem::path& path, const ColumnMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open catalog " + path.string());
  return load_catalog(in, mapping);
}

void write_catalog_csv(std::ostream& out, const Catalog& catalog) {
  out << "id,Label,Issue,brand,name,ingredients,Combination,Dry,Normal,Oily,Sensitive,"
         "price,rank\n";
  for (const Product& p : catalog.products()) {
    std::string ingredients;
    for (std::size_t i = 0; i < p.ingredients.size(); ++i) {
      if (i) ingredients += ", ";
      ingredients += p.ingredients[i];
    }
    out << p.id << ',' << display_name(p.category) << ','
        << (p.issue ? display_name(*p.issue) : std::string_view{}) << ','
        << csv::escape(p.brand) << ',' << csv::escape(p.name) << ','
        << csv::escape(ingredients);
    for (bool f : p.suitability) out << ',' << (f ? '1' : '0');
    out << ',' << (p.price ? format_decimal(*p.price) : std::string{}) << ','
        << (p.rank ? format_decimal(*p.rank) : std::string{}) << '\n';
  }
}

std::vector<Product> filter(const Catalog& catalog, const ProductFilter& where) {
  std::vector<Product> out;
  for (const Product& p : catalog.products()) {
    if (where.category && p.category != *where.category) continue;
    if (where.skin_type && !p.suits(*where.skin_type)) continue;
    if (where.issue && !p.targets(*where.issue)) continue;
    if (where.brand && !iequals(p.brand, *where.brand)) continue;
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(),
            [](const Product& a, const Product& b) { return a.id < b.id; });
  return out;
}

}  // namespace skincare
