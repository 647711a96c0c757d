#include "knnpe/spec_text.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace knnpe {

namespace {

std::vector<std::string_view> split_parts(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == text.npos ? text.npos : colon - start));
    if (colon == text.npos) break;
    start = colon + 1;
  }
  return parts;
}

[[noreturn]] void bad(std::string_view text, std::string_view why) {
  throw Error(ErrorKind::Config, fmt::format("bad spec '{}': {}", text, why));
}

double number(std::string_view text, std::string_view value) {
  double out = 0.0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || end != value.data() + value.size() || !std::isfinite(out)) {
    bad(text, fmt::format("'{}' is not a number", value));
  }
  return out;
}

std::size_t parse_k(std::string_view text, std::string_view part) {
  if (part.substr(0, 2) != "k=") bad(text, "expected k=<int>");
  const auto value = part.substr(2);
  std::size_t k = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), k);
  if (ec != std::errc{} || end != value.data() + value.size() || k < 1) {
    bad(text, "k must be a positive integer");
  }
  return k;
}

}  // namespace

SpecText parse_spec(std::string_view raw) {
  const std::string text = trim(raw);
  const auto parts = split_parts(text);
  const auto kind = parts[0];
  if (kind == "knn") {
    if (parts.size() < 2 || parts.size() > 3) bad(text, "expected knn:k=<int>[:weighted]");
    KnnSpec s{parse_k(text, parts[1]), false};
    if (parts.size() == 3) {
      if (parts[2] != "weighted") bad(text, "unknown option");
      s.weighted = true;
    }
    return {s, std::nullopt};
  }
  if (kind == "cnn") {
    if (parts.size() != 2) bad(text, "expected cnn:k=<int>");
    return {CnnSpec{parse_k(text, parts[1])}, std::nullopt};
  }
  if (kind == "pe") {
    if (parts.size() < 3 || parts.size() > 4) {
      bad(text, "expected pe:<yukawa|gauss>:<p=|r=><value>[:normalized]");
    }
    PeSpec s;
    if (parts[1] == "yukawa") s.kind = PotentialKind::Yukawa;
    else if (parts[1] == "gauss" || parts[1] == "gaussian") s.kind = PotentialKind::Gaussian;
    else bad(text, "potential must be yukawa or gauss");
    if (parts.size() == 4) {
      if (parts[3] != "normalized") bad(text, "unknown option");
      s.normalized = true;
    }
    const auto key = parts[2].substr(0, 2);
    const double value = number(text, parts[2].substr(2));
    if (key == "r=") {
      if (!(value > 0.0)) bad(text, "radius must be positive");
      s.radius = value;
      return {s, std::nullopt};
    }
    if (key == "p=") {
      if (!(value > 0.0 && value <= 200.0)) bad(text, "percent must be in (0, 200]");
      return {s, value};
    }
    bad(text, "expected p=<percent> or r=<radius>");
  }
  bad(text, "kind must be knn, cnn or pe");
}

std::string format_spec(const ClassifierSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KnnSpec>) {
          return fmt::format("knn:k={}{}", s.k, s.weighted ? ":weighted" : "");
        } else if constexpr (std::is_same_v<T, CnnSpec>) {
          return fmt::format("cnn:k={}", s.k);
        } else {
          return fmt::format("pe:{}:r={}{}", potential_name(s.kind), s.radius,
                             s.normalized ? ":normalized" : "");
        }
      },
      spec);
}

std::string format_spec(const SpecText& spec) {
  if (!spec.percent) return format_spec(spec.spec);
  const auto& pe = std::get<PeSpec>(spec.spec);
  return fmt::format("pe:{}:p={}{}", potential_name(pe.kind), *spec.percent,
                     pe.normalized ? ":normalized" : "");
}

std::string display_name(const ClassifierSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KnnSpec>) {
          return fmt::format("{}{}NN", s.k, s.weighted ? "W" : "");
        } else if constexpr (std::is_same_v<T, CnnSpec>) {
          return fmt::format("{}CNN", s.k);
        } else {
          return fmt::format("PE-{}{}", s.kind == PotentialKind::Yukawa ? "Y" : "G",
                             s.normalized ? "n" : "");
        }
      },
      spec);
}

ClassifierSpec resolve(const SpecText& spec, double average) {
  if (!spec.percent) return spec.spec;
  PeSpec pe = std::get<PeSpec>(spec.spec);
  pe.radius = radius_for_percent(average, *spec.percent);
  return pe;
}

}  // namespace knnpe
