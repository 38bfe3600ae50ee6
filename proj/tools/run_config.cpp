#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cli.hpp"
#include "scsamp/numfmt.hpp"

namespace scsamp::cli {
namespace {

double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw std::invalid_argument("bad number '" + std::string(text) + "' in " + std::string(what));
  }
  return v;
}

}  // namespace

std::vector<double> Range::values() const {
  const double span = (stop - start) / step;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out(n);
  // Grids aligned to the step are generated as integer multiples, which keeps
  // values such as 0.01 exact instead of accumulating offset error.
  const double k = std::round(start / step);
  const bool aligned = std::abs(start / step - k) < 1e-9;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = aligned ? (k + static_cast<double>(i)) * step : start + static_cast<double>(i) * step;
  }
  if (std::abs(out.back() - stop) < 1e-9 * step) out.back() = stop;
  return out;
}

Range parse_range(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 3) throw std::invalid_argument("range '" + std::string(text) + "' is not start:stop:step");
  const Range r{parse_number(parts[0], "range"), parse_number(parts[1], "range"), parse_number(parts[2], "range")};
  if (!(r.step > 0.0)) throw std::invalid_argument("range '" + std::string(text) + "' needs step > 0");
  if (r.start > r.stop) throw std::invalid_argument("range '" + std::string(text) + "' needs start <= stop");
  if ((r.stop - r.start) / r.step > 1e7) throw std::invalid_argument("range '" + std::string(text) + "' is too long");
  return r;
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"pairing", c.pairing},
          {"alpha", c.alpha},
          {"alpha_range", c.alpha_range},
          {"x_range", c.x_range},
          {"p_range", c.p_range},
          {"loss", c.loss},
          {"targets", c.targets},
          {"window", c.window},
          {"outcome", c.outcome},
          {"nodes", c.nodes},
          {"stages", c.stages},
          {"policy", c.policy},
          {"term_cap", c.term_cap},
          {"attenuated_target", c.attenuated_target},
          {"out", c.out},
          {"format", c.format},
          {"checkpoint_dir", c.checkpoint_dir}};
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out << format_number(*d);
      } else if (const std::int64_t* n = std::get_if<std::int64_t>(&row[i])) {
        out << *n;
      } else {
        out << std::get<std::string>(row[i]);
      }
    }
    out << '\n';
  }
}

nlohmann::json to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const Cell& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
    rows.push_back(std::move(r));
  }
  return {{"schema_version", kSchemaVersion}, {"columns", t.columns}, {"rows", std::move(rows)}};
}

}  // namespace scsamp::cli
