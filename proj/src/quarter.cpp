#include "msarpool/quarter.hpp"

#include <cctype>
#include <cstdio>

#include "msarpool/errors.hpp"

namespace msarpool {

Quarter Quarter::of(int year, int quarter) {
  if (quarter < 1 || quarter > 4) {
    throw validation_error("quarter must be in 1..4, got " + std::to_string(quarter));
  }
  return Quarter(year * 4 + quarter - 1);
}

int Quarter::year() const {
  int y = index_ / 4;
  if (index_ < 0 && index_ % 4 != 0) --y;
  return y;
}

int Quarter::quarter() const {
  int r = index_ % 4;
  if (r < 0) r += 4;
  return r + 1;
}

std::string Quarter::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04dQ%d", year(), quarter());
  return buf;
}

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to || to > s.size()) return false;
  for (std::size_t i = from; i < to; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Quarter Quarter::parse(const std::string& text) {
  // YYYYQn
  if (text.size() >= 6 && (text[4] == 'Q' || text[4] == 'q') &&
      all_digits(text, 0, 4) && all_digits(text, 5, text.size()) && text.size() == 6) {
    int year = std::stoi(text.substr(0, 4));
    int q = text[5] - '0';
    if (q < 1 || q > 4) throw validation_error("bad quarter in '" + text + "'");
    return Quarter::of(year, q);
  }
  // YYYY-MM-DD (day may be any valid two digits; only the month matters)
  if (text.size() == 10 && text[4] == '-' && text[7] == '-' &&
      all_digits(text, 0, 4) && all_digits(text, 5, 7) && all_digits(text, 8, 10)) {
    int year = std::stoi(text.substr(0, 4));
    int month = std::stoi(text.substr(5, 2));
    if (month < 1 || month > 12) throw validation_error("bad month in '" + text + "'");
    return Quarter::of(year, (month - 1) / 3 + 1);
  }
  throw validation_error("cannot parse quarter from '" + text + "' (want YYYYQn or YYYY-MM-DD)");
}

}  // namespace msarpool
