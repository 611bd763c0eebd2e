#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "effindex/error.hpp"
#include "effindex/io.hpp"

namespace effindex {

const char* to_string(GapPolicy policy) noexcept {
  return policy == GapPolicy::reject ? "reject" : "ffill";
}

GapPolicy parse_gap_policy(const std::string& text) {
  if (text == "reject") return GapPolicy::reject;
  if (text == "ffill" || text == "forward-fill") return GapPolicy::forward_fill;
  throw Error(ErrorCode::invalid_input, fmt::format("unknown gap policy '{}'", text));
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()));
}

Date parse_date(std::string_view text) {
  auto bad = [&] {
    return Error(ErrorCode::parse_error, fmt::format("invalid date '{}'", text));
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  int y = 0;
  unsigned mo = 0;
  unsigned d = 0;
  auto field = [&](std::size_t pos, std::size_t len, auto& out) {
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    if (ec != std::errc() || ptr != first + len) throw bad();
  };
  field(0, 4, y);
  field(5, 2, mo);
  field(8, 2, d);
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                                        std::chrono::day{d}};
  if (!ymd.ok()) throw bad();
  return Date{ymd};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool is_missing_token(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" ||
         cell == "null";
}

struct Column {
  std::string label;
  std::vector<std::optional<double>> cells;
  std::vector<std::size_t> lines;
  std::string failure;  // first reason for exclusion, if any
};

std::string list_lines(const std::vector<std::size_t>& lines) {
  constexpr std::size_t kShown = 5;
  std::string out;
  for (std::size_t i = 0; i < lines.size() && i < kShown; ++i) {
    out += (i ? ", " : "") + std::to_string(lines[i]);
  }
  if (lines.size() > kShown) out += fmt::format(" and {} more", lines.size() - kShown);
  return out;
}

}  // namespace

PricePanel ingest_csv(std::istream& in, GapPolicy policy) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<Column> columns;
  PricePanel panel;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto cells = split(view);
    if (!have_header) {
      if (cells.size() < 2) {
        throw Error(ErrorCode::parse_error,
                    fmt::format("line {}: header needs a date column and at least "
                                "one series",
                                line_no));
      }
      std::set<std::string> seen;
      for (std::size_t c = 1; c < cells.size(); ++c) {
        std::string label(cells[c]);
        if (label.empty()) {
          throw Error(ErrorCode::parse_error,
                      fmt::format("line {}: empty label in column {}", line_no, c + 1));
        }
        if (!seen.insert(label).second) {
          throw Error(ErrorCode::parse_error,
                      fmt::format("line {}: duplicate label '{}'", line_no, label));
        }
        columns.push_back(Column{std::move(label), {}, {}, {}});
      }
      have_header = true;
      continue;
    }
    if (cells.size() > columns.size() + 1) {
      throw Error(ErrorCode::parse_error,
                  fmt::format("line {}: {} cells but header has {}", line_no,
                              cells.size(), columns.size() + 1));
    }
    Date date;
    try {
      date = parse_date(cells[0]);
    } catch (const Error& e) {
      throw Error(ErrorCode::parse_error, fmt::format("line {}: {}", line_no, e.what()));
    }
    if (!panel.timestamps.empty() && !(panel.timestamps.back() < date)) {
      throw Error(ErrorCode::parse_error,
                  fmt::format("line {}: date {} does not increase", line_no,
                              format_date(date)));
    }
    panel.timestamps.push_back(date);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      Column& col = columns[c];
      col.lines.push_back(line_no);
      const std::string_view cell = c + 1 < cells.size() ? cells[c + 1] : "";
      if (is_missing_token(cell)) {
        col.cells.emplace_back();
        continue;
      }
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        panel.diagnostics.push_back(fmt::format(
            "line {}: unparseable cell '{}' in series '{}'", line_no, cell, col.label));
        col.cells.emplace_back();
        continue;
      }
      if (!(value > 0.0) || !std::isfinite(value)) {
        if (col.failure.empty()) {
          col.failure = fmt::format("non-positive or non-finite price {} on line {}",
                                    cell, line_no);
        }
      }
      col.cells.emplace_back(value);
    }
  }
  if (!have_header) {
    throw Error(ErrorCode::parse_error, "missing header row");
  }

  for (Column& col : columns) {
    SeriesProvenance prov{col.label, {}};
    std::vector<std::size_t> missing;
    std::vector<double> values;
    values.reserve(col.cells.size());
    for (std::size_t i = 0; i < col.cells.size(); ++i) {
      if (col.cells[i]) {
        values.push_back(*col.cells[i]);
      } else if (policy == GapPolicy::forward_fill && !values.empty()) {
        values.push_back(values.back());
        prov.filled_lines.push_back(col.lines[i]);
      } else {
        missing.push_back(col.lines[i]);
        values.push_back(0.0);
      }
    }
    if (col.failure.empty() && !missing.empty()) {
      col.failure = policy == GapPolicy::reject
                        ? fmt::format("missing observations on lines {}",
                                      list_lines(missing))
                        : fmt::format("leading missing observations on lines {} "
                                      "cannot be forward-filled",
                                      list_lines(missing));
    }
    if (col.failure.empty() && values.size() < kMinPanelLength) {
      col.failure = fmt::format("only {} observations, need at least {}",
                                values.size(), kMinPanelLength);
    }
    if (!col.failure.empty()) {
      panel.excluded.push_back(col.label);
      panel.diagnostics.push_back(
          fmt::format("series '{}' excluded: {}", col.label, col.failure));
      continue;
    }
    if (!prov.filled_lines.empty()) {
      panel.diagnostics.push_back(fmt::format("series '{}': forward-filled lines {}",
                                              col.label, list_lines(prov.filled_lines)));
    }
    panel.series.emplace_back(col.label, panel.timestamps, std::move(values));
    panel.provenance.push_back(std::move(prov));
  }
  return panel;
}

PricePanel ingest_csv(const std::filesystem::path& path, GapPolicy policy) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::parse_error,
                fmt::format("cannot open '{}'", path.string()));
  }
  return ingest_csv(in, policy);
}

}  // namespace effindex
