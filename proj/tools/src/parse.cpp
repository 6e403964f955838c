#include "hillband/cli/parse.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

namespace hillband::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  }
  return x;
}

// Coefficient of an imaginary term: "" / "+" / "-" stand for 1 / 1 / -1.
double parse_imag_coefficient(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

}  // namespace

cplx parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // The split is the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag_coefficient(body, text)};
  return {parse_real(body.substr(0, split), text), parse_imag_coefficient(body.substr(split), text)};
}

namespace {

template <typename T, typename F>
std::vector<T> split_list(std::string_view text, F&& parse_item) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_item(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<cplx> parse_complex_list(std::string_view text) {
  return split_list<cplx>(text, [](std::string_view item) { return parse_complex(item); });
}

std::vector<double> parse_real_list(std::string_view text) {
  return split_list<double>(text, [](std::string_view item) {
    const std::string_view t = trim(item);
    return parse_real(t, t);
  });
}

std::string format_complex(cplx z) {
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  if (im < 0.0) return fmt::format("{}-{}i", re, -im);
  return fmt::format("{}+{}i", re, im);
}

}  // namespace hillband::cli
