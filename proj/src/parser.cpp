#include "oddtax/parser.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace oddtax {

namespace {

constexpr std::size_t kRecordMinFields = 6;
constexpr std::size_t kRecordMaxFields = 8;
constexpr std::size_t kOddMinFields = 5;
constexpr std::size_t kOddMaxFields = 6;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }
char to_upper(char c) { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return to_lower(x) == to_lower(y); });
}

bool is_star(std::string_view s) { return s == "*" || s == kUnicodeStar; }

std::string_view star(StarStyle style) { return style == StarStyle::Unicode ? kUnicodeStar : "*"; }

// Byte length of the UTF-8 sequence starting with `lead`, clamped to 1 for
// stray continuation bytes.
std::size_t utf8_length(unsigned char lead) {
  if (lead >= 0xf0) return 4;
  if (lead >= 0xe0) return 3;
  if (lead >= 0xc0) return 2;
  return 1;
}

struct Field {
  std::string_view text;  // trimmed
  std::size_t start;      // of trimmed text
  std::size_t raw_start;
  std::size_t raw_end;

  SourceSpan span() const { return {start, start + text.size()}; }
};

Field make_field(std::string_view input, std::size_t raw_start, std::size_t raw_end) {
  std::size_t b = raw_start;
  std::size_t e = raw_end;
  while (b < e && is_space(input[b])) ++b;
  while (e > b && is_space(input[e - 1])) --e;
  return {input.substr(b, e - b), b, raw_start, raw_end};
}

std::vector<Field> split_fields(std::string_view input) {
  std::vector<Field> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= input.size(); ++i) {
    if (i == input.size() || input[i] == '|') {
      fields.push_back(make_field(input, start, i));
      start = i + 1;
    }
  }
  return fields;
}

Diagnostic error(std::string_view code, std::string message, SourceSpan span) {
  return Diagnostic{std::string(code), Severity::Error, std::move(message), span};
}

Diagnostic invalid_token(std::string_view what, std::string_view token, SourceSpan span) {
  return error(codes::kInvalidToken,
               "invalid " + std::string(what) + " token '" + std::string(token) + "'", span);
}

// Accumulates diagnostics and observations for one parse.
struct Sink {
  std::vector<Diagnostic> diagnostics;
  std::vector<SourceObservation> observations;

  bool failed() const {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
  }

  template <typename T>
  ParseResult<T> finish(std::optional<T> value) {
    if (failed()) value.reset();
    return ParseResult<T>{std::move(value), std::move(diagnostics), std::move(observations)};
  }
};

std::optional<CountryScope> parse_countries(const Field& f, Sink& sink) {
  if (is_star(f.text)) return CountryScope::any();
  std::vector<std::string> codes;
  std::set<std::string> seen;
  bool ok = true;
  std::size_t i = 0;
  while (i < f.text.size()) {
    if (is_space(f.text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < f.text.size() && !is_space(f.text[j])) ++j;
    const std::string_view token = f.text.substr(i, j - i);
    const SourceSpan span{f.start + i, f.start + j};
    std::string code;
    for (char c : token) code.push_back(to_upper(c));
    if (!is_country_code(code)) {
      sink.diagnostics.push_back(invalid_token("country code", token, span));
      ok = false;
    } else if (!seen.insert(code).second) {
      sink.observations.push_back({SourceObservation::Kind::DuplicateToken, "countries", code, span});
    } else {
      codes.push_back(std::move(code));
    }
    i = j;
  }
  if (!ok) return std::nullopt;
  return CountryScope::listed(std::move(codes));
}

std::optional<RoadUserScope> parse_road_users(const Field& f, Sink& sink) {
  if (is_star(f.text)) return RoadUserScope::Any;
  if (iequals(f.text, "A")) return RoadUserScope::AutomatedOnly;
  if (iequals(f.text, "P")) return RoadUserScope::MixedNoVru;
  sink.diagnostics.push_back(invalid_token("road user", f.text, f.span()));
  return std::nullopt;
}

std::optional<RoadTypeSet> parse_road_types(const Field& f, Sink& sink) {
  if (is_star(f.text)) return RoadTypeSet::any();
  std::uint8_t flags = 0;
  std::set<std::string> seen;
  bool ok = true;
  std::size_t i = 0;
  while (i < f.text.size()) {
    const char c = to_lower(f.text[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    std::size_t len = 1;
    std::string token;
    switch (c) {
      case 'h':
        if (i + 1 < f.text.size() && f.text[i + 1] == '+') {
          len = 2;
          token = "H+";
          flags |= RoadTypeSet::kHighway | RoadTypeSet::kHighwayExt;
        } else {
          token = "H";
          flags |= RoadTypeSet::kHighway;
        }
        break;
      case 'u': token = "U"; flags |= RoadTypeSet::kUrban; break;
      case 'c': token = "C"; flags |= RoadTypeSet::kCountry; break;
      case 's': token = "S"; flags |= RoadTypeSet::kSpecial; break;
      default:
        len = std::min(utf8_length(static_cast<unsigned char>(f.text[i])), f.text.size() - i);
        sink.diagnostics.push_back(
            invalid_token("road type", f.text.substr(i, len), {f.start + i, f.start + i + len}));
        ok = false;
        break;
    }
    if (!token.empty() && !seen.insert(token).second) {
      sink.observations.push_back(
          {SourceObservation::Kind::DuplicateToken, "roads", token, {f.start + i, f.start + i + len}});
    }
    i += len;
  }
  if (!ok) return std::nullopt;
  return RoadTypeSet::from_flags(flags);
}

std::optional<EnvScope> parse_env(const Field& f, Sink& sink) {
  if (is_star(f.text)) return EnvScope::any();

  struct Seen {
    char token;
    SourceSpan span;
  };
  std::vector<Seen> lights;
  std::vector<Seen> wets;
  std::optional<SourceSpan> fog;
  bool ok = true;

  for (std::size_t i = 0; i < f.text.size();) {
    const char c = to_lower(f.text[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    const SourceSpan span{f.start + i, f.start + i + 1};
    const char upper = to_upper(c);
    auto note_duplicate = [&](const std::vector<Seen>& group) {
      for (const auto& s : group) {
        if (s.token == upper) {
          sink.observations.push_back(
              {SourceObservation::Kind::DuplicateToken, "env", std::string(1, upper), span});
          return true;
        }
      }
      return false;
    };
    switch (c) {
      case 'l':
      case 'n':
        if (!note_duplicate(lights)) lights.push_back({upper, span});
        break;
      case 'd':
      case 'r':
      case 'i':
        if (!note_duplicate(wets)) wets.push_back({upper, span});
        break;
      case 'f':
        if (fog) {
          sink.observations.push_back({SourceObservation::Kind::DuplicateToken, "env", "F", span});
        } else {
          fog = span;
        }
        break;
      default: {
        const std::size_t len =
            std::min(utf8_length(static_cast<unsigned char>(f.text[i])), f.text.size() - i);
        sink.diagnostics.push_back(
            invalid_token("environment", f.text.substr(i, len), {f.start + i, f.start + i + len}));
        ok = false;
        i += len;
        continue;
      }
    }
    ++i;
  }
  if (!ok) return std::nullopt;

  constexpr std::string_view kLightOrder = "LN";
  constexpr std::string_view kWetOrder = "DRI";
  auto strongest = [](const std::vector<Seen>& group, std::string_view order) {
    std::size_t best = 0;
    for (const auto& s : group) best = std::max(best, order.find(s.token));
    return best;
  };
  // Every token weaker than the strongest of its group is substituted away.
  auto report_redundant = [&](const std::vector<Seen>& group, std::string_view order, std::size_t best) {
    for (const auto& s : group) {
      if (order.find(s.token) < best) {
        sink.observations.push_back(
            {SourceObservation::Kind::RedundantEnvToken, "env", std::string(1, s.token), s.span});
      }
    }
  };

  EnvScope env;
  if (!lights.empty()) {
    const auto best = strongest(lights, kLightOrder);
    env.light = static_cast<Light>(best);
    report_redundant(lights, kLightOrder, best);
  }
  if (!wets.empty()) {
    const auto best = strongest(wets, kWetOrder);
    env.wetness = static_cast<Wetness>(best);
    report_redundant(wets, kWetOrder, best);
  }
  env.fog = fog.has_value();
  return env;
}

std::optional<VelocityClass> parse_velocity(const Field& f, Sink& sink) {
  if (is_star(f.text)) return VelocityClass::Unlimited;
  if (f.text.size() == 2 && to_lower(f.text[0]) == 'v' && f.text[1] >= '0' && f.text[1] <= '4') {
    return static_cast<VelocityClass>(f.text[1] - '0');
  }
  sink.diagnostics.push_back(invalid_token("velocity", f.text, f.span()));
  return std::nullopt;
}

std::optional<RequirementTags> parse_requirements(const Field& f, Sink& sink) {
  if (iequals(f.text, "none")) return RequirementTags{};
  std::vector<std::string> tags;
  std::set<std::string> seen;
  bool ok = true;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= f.text.size(); ++i) {
    if (i < f.text.size() && f.text[i] != ',') continue;
    const std::string_view raw = f.text.substr(start, i - start);
    const SourceSpan span{f.start + start, f.start + i};
    std::string tag;
    for (char c : raw) {
      if (!is_space(c)) tag.push_back(to_lower(c));
    }
    if (!RequirementTags::is_valid_tag(tag)) {
      sink.diagnostics.push_back(
          invalid_token("requirement", tag.empty() ? std::string_view("(empty)") : raw, span));
      ok = false;
    } else if (!seen.insert(tag).second) {
      sink.observations.push_back({SourceObservation::Kind::DuplicateToken, "extras", tag, span});
    } else {
      tags.push_back(std::move(tag));
    }
    start = i + 1;
  }
  if (!ok) return std::nullopt;
  return RequirementTags(std::move(tags));
}

// "ADRL" followed by digits, whitespace allowed in between. Used for
// trailing-field disambiguation; the range check happens in parse_adrl.
bool adrl_like(std::string_view text) {
  if (text.size() < 5 || !iequals(text.substr(0, 4), "adrl")) return false;
  std::size_t i = 4;
  while (i < text.size() && is_space(text[i])) ++i;
  if (i == text.size()) return false;
  return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(i), text.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<AdrlLevel> parse_adrl(const Field& f, Sink& sink) {
  if (adrl_like(f.text)) {
    const char last = f.text.back();
    std::size_t digits = 0;
    while (digits < f.text.size() && f.text[f.text.size() - 1 - digits] >= '0' &&
           f.text[f.text.size() - 1 - digits] <= '9') {
      ++digits;
    }
    if (digits == 1 && last >= '1' && last <= '9') return AdrlLevel(last - '0');
  }
  sink.diagnostics.push_back(invalid_token("ADRL", f.text, f.span()));
  return std::nullopt;
}

bool check_nonempty(const std::vector<Field>& fields, Sink& sink) {
  bool ok = true;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].text.empty()) {
      sink.diagnostics.push_back(error(codes::kEmptyField, "field " + std::to_string(i + 1) + " is empty",
                                       {fields[i].raw_start, fields[i].raw_end}));
      ok = false;
    }
  }
  return ok;
}

bool check_field_count(std::string_view input, const std::vector<Field>& fields, std::size_t min,
                       std::size_t max, Sink& sink) {
  if (fields.size() < min) {
    sink.diagnostics.push_back(error(codes::kMissingFields,
                                     "expected at least " + std::to_string(min) + " fields, found " +
                                         std::to_string(fields.size()),
                                     {0, input.size()}));
    return false;
  }
  if (fields.size() > max) {
    sink.diagnostics.push_back(error(codes::kTrailingGarbage,
                                     "expected at most " + std::to_string(max) + " fields, found " +
                                         std::to_string(fields.size()),
                                     {fields[max].raw_start, input.size()}));
    return false;
  }
  return true;
}

// Parses fields [first, first + 5) as the five ODD categories, plus an
// optional extras field.
std::optional<OddDescriptor> parse_odd_fields(const std::vector<Field>& fields, std::size_t first,
                                              const Field* extras, Sink& sink) {
  auto countries = parse_countries(fields[first], sink);
  auto users = parse_road_users(fields[first + 1], sink);
  auto roads = parse_road_types(fields[first + 2], sink);
  auto env = parse_env(fields[first + 3], sink);
  auto velocity = parse_velocity(fields[first + 4], sink);
  std::optional<RequirementTags> tags = RequirementTags{};
  if (extras) tags = parse_requirements(*extras, sink);
  if (!countries || !users || !roads || !env || !velocity || !tags) return std::nullopt;
  return OddDescriptor{std::move(*countries), *users, *roads, *env, *velocity, std::move(*tags)};
}

template <typename T, typename Fn>
ParseResult<T> parse_single(std::string_view text, std::size_t offset, Fn fn) {
  Sink sink;
  Field f = make_field(text, 0, text.size());
  f.start += offset;
  f.raw_start += offset;
  f.raw_end += offset;
  if (f.text.empty()) {
    sink.diagnostics.push_back(error(codes::kEmptyField, "field is empty", {f.raw_start, f.raw_end}));
    return sink.finish<T>(std::nullopt);
  }
  auto v = fn(f, sink);
  return sink.finish<T>(std::move(v));
}

}  // namespace

bool looks_like_record(std::string_view input) {
  const auto fields = split_fields(input);
  const auto first = fields.front().text;
  return first.size() == 1 && first[0] >= '0' && first[0] <= '9';
}

ParseResult<TaxonomyRecord> parse_record(std::string_view input) {
  Sink sink;
  const auto fields = split_fields(input);
  if (!check_field_count(input, fields, kRecordMinFields, kRecordMaxFields, sink) ||
      !check_nonempty(fields, sink)) {
    return sink.finish<TaxonomyRecord>(std::nullopt);
  }

  std::optional<SaeLevel> sae;
  const auto sae_text = fields[0].text;
  if (sae_text.size() == 1 && sae_text[0] >= '0' && sae_text[0] <= '5') {
    sae = SaeLevel(sae_text[0] - '0');
  } else {
    sink.diagnostics.push_back(error(codes::kInvalidSaeLevel,
                                     "SAE level must be a single digit 0-5, got '" + std::string(sae_text) + "'",
                                     fields[0].span()));
  }

  const Field* extras = nullptr;
  const Field* adrl_field = nullptr;
  if (fields.size() == 7) {
    (adrl_like(fields[6].text) ? adrl_field : extras) = &fields[6];
  } else if (fields.size() == 8) {
    extras = &fields[6];
    adrl_field = &fields[7];
  }

  auto odd = parse_odd_fields(fields, 1, extras, sink);
  std::optional<AdrlLevel> adrl;
  if (adrl_field) adrl = parse_adrl(*adrl_field, sink);

  if (!sae || !odd) return sink.finish<TaxonomyRecord>(std::nullopt);
  return sink.finish<TaxonomyRecord>(TaxonomyRecord{*sae, std::move(*odd), adrl});
}

ParseResult<OddDescriptor> parse_odd(std::string_view input) {
  Sink sink;
  const auto fields = split_fields(input);
  if (!check_field_count(input, fields, kOddMinFields, kOddMaxFields, sink) ||
      !check_nonempty(fields, sink)) {
    return sink.finish<OddDescriptor>(std::nullopt);
  }
  const Field* extras = fields.size() == 6 ? &fields[5] : nullptr;
  return sink.finish<OddDescriptor>(parse_odd_fields(fields, 0, extras, sink));
}

ParseResult<CountryScope> parse_countries_field(std::string_view text, std::size_t offset) {
  return parse_single<CountryScope>(text, offset, parse_countries);
}
ParseResult<RoadUserScope> parse_road_users_field(std::string_view text, std::size_t offset) {
  return parse_single<RoadUserScope>(text, offset, parse_road_users);
}
ParseResult<RoadTypeSet> parse_road_types_field(std::string_view text, std::size_t offset) {
  return parse_single<RoadTypeSet>(text, offset, parse_road_types);
}
ParseResult<EnvScope> parse_env_field(std::string_view text, std::size_t offset) {
  return parse_single<EnvScope>(text, offset, parse_env);
}
ParseResult<VelocityClass> parse_velocity_field(std::string_view text, std::size_t offset) {
  return parse_single<VelocityClass>(text, offset, parse_velocity);
}
ParseResult<RequirementTags> parse_requirements_field(std::string_view text, std::size_t offset) {
  return parse_single<RequirementTags>(text, offset, parse_requirements);
}

std::string format_countries(const CountryScope& c, StarStyle style) {
  if (c.is_any()) return std::string(star(style));
  std::string out;
  for (const auto& code : c.codes()) {
    if (!out.empty()) out += ' ';
    out += code;
  }
  return out;
}

std::string format_road_users(RoadUserScope u, StarStyle style) {
  switch (u) {
    case RoadUserScope::AutomatedOnly: return "A";
    case RoadUserScope::MixedNoVru: return "P";
    case RoadUserScope::Any: break;
  }
  return std::string(star(style));
}

std::string format_road_types(RoadTypeSet r, StarStyle style) {
  if (r.is_any()) return std::string(star(style));
  std::string out;
  if (r.has(RoadTypeSet::kHighwayExt)) {
    out += "H+";
  } else if (r.has(RoadTypeSet::kHighway)) {
    out += "H";
  }
  if (r.has(RoadTypeSet::kUrban)) out += 'U';
  if (r.has(RoadTypeSet::kCountry)) out += 'C';
  if (r.has(RoadTypeSet::kSpecial)) out += 'S';
  return out;
}

std::string format_env(const EnvScope& e, StarStyle style) {
  if (e.is_any()) return std::string(star(style));
  std::string out;
  out += e.light == Light::DaylightOnly ? 'L' : 'N';
  constexpr std::array<char, 3> kWet{'D', 'R', 'I'};
  out += kWet[static_cast<std::size_t>(e.wetness)];
  if (e.fog) out += 'F';
  return out;
}

std::string format_velocity(VelocityClass v, StarStyle style) {
  if (v == VelocityClass::Unlimited) return std::string(star(style));
  return "v" + std::to_string(static_cast<int>(v));
}

std::string format_requirements(const RequirementTags& t) {
  if (t.empty()) return "none";
  std::string out;
  for (const auto& tag : t.sorted()) {
    if (!out.empty()) out += ", ";
    out += tag;
  }
  return out;
}

std::string canonicalize(const OddDescriptor& odd, StarStyle style) {
  std::string out;
  out += format_countries(odd.countries, style);
  out += " | " + format_road_users(odd.road_users, style);
  out += " | " + format_road_types(odd.road_types, style);
  out += " | " + format_env(odd.environment, style);
  out += " | " + format_velocity(odd.velocity, style);
  out += " | " + format_requirements(odd.requirements);
  return out;
}

std::string canonicalize(const TaxonomyRecord& record, StarStyle style) {
  std::string out = std::to_string(record.sae.value()) + " | " + canonicalize(record.odd, style);
  if (record.adrl) out += " | ADRL" + std::to_string(record.adrl->value());
  return out;
}

}  // namespace oddtax
