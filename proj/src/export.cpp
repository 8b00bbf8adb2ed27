#include "onehit/export.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace onehit {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string row_label(const HandState& first, const HandState& last) {
  std::string kind = first.soft ? "Soft " : "Hard ";
  if (first.total == last.total) return kind + std::to_string(first.total);
  return kind + std::to_string(first.total) + " - " + std::to_string(last.total);
}

// Renders rows of player states against the given dealer columns, merging
// identical consecutive rows of the same softness.
void render_grid(std::ostringstream& out, const StrategyTable& table, const std::vector<DealerInfo>& columns,
                 const std::string& corner) {
  out << "| " << corner << " |";
  for (const auto& c : columns) out << ' ' << c.column_label() << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out << ":-:|";
  out << '\n';

  struct Row {
    HandState first, last;
    std::vector<std::string> marks;
  };
  std::vector<Row> rows;
  for (const auto& p : two_card_states()) {
    std::vector<std::string> marks;
    for (const auto& c : columns) {
      const auto* cell = table.find({p, c});
      marks.push_back(cell ? cell->mark() : "-");
    }
    if (!rows.empty() && rows.back().first.soft == p.soft && rows.back().marks == marks) {
      rows.back().last = p;
    } else {
      rows.push_back({p, p, std::move(marks)});
    }
  }
  for (const auto& r : rows) {
    out << "| " << row_label(r.first, r.last) << " |";
    for (const auto& m : r.marks) out << ' ' << m << " |";
    out << '\n';
  }
}

std::string decimal(const Rational& r, int precision) { return rational_round(r, precision); }

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "markdown" || text == "md") return OutputFormat::Markdown;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json-lines" || text == "jsonl") return OutputFormat::JsonLines;
  throw std::invalid_argument("unknown output format: " + text);
}

std::string table_markdown(const StrategyTable& table) {
  std::ostringstream out;
  const auto& cfg = table.config();
  out << "## Basic strategy: " << cfg.label() << "\n\n";
  switch (cfg.visibility) {
    case Visibility::TwoUp: {
      std::vector<DealerInfo> hard_cols, soft_cols;
      for (const auto& s : two_card_states()) (s.soft ? soft_cols : hard_cols).push_back(DealerInfo::both(s));
      out << "### Dealer hard totals\n\n";
      render_grid(out, table, hard_cols, "Player \\ Dealer");
      out << "\n### Dealer soft totals\n\n";
      render_grid(out, table, soft_cols, "Player \\ Dealer");
      break;
    }
    case Visibility::OneUp: {
      std::vector<DealerInfo> cols;
      for (int v = 2; v <= 10; ++v) cols.push_back(DealerInfo::up_card(CardValue(v)));
      cols.push_back(DealerInfo::up_card(kAce));
      render_grid(out, table, cols, "Player \\ Up-card");
      break;
    }
    case Visibility::NoUp: {
      std::ostringstream grid;
      render_grid(grid, table, {DealerInfo::nothing()}, "Player");
      // Swap the "-" column heading for something readable.
      std::string text = grid.str();
      text.replace(text.find(" - |"), 4, " Decision |");
      out << text;
      break;
    }
  }
  if (table.asterisk_count() > 0) out << "\n`*` the best play depends on the exact starting layout.\n";
  return out.str();
}

std::string table_csv(const StrategyTable& table, int precision) {
  std::ostringstream out;
  out << "player,dealer,decision,asterisk,ev_hit,ev_stand,ev_hit_decimal,ev_stand_decimal\n";
  for (const auto& c : table.cells()) {
    out << c.observable.player.key() << ',' << c.observable.dealer.key() << ',' << to_char(c.decision) << ','
        << (c.asterisk ? 1 : 0) << ',' << c.ev_hit.str() << ',' << c.ev_stand.str() << ','
        << decimal(c.ev_hit, precision) << ',' << decimal(c.ev_stand, precision) << '\n';
  }
  return out.str();
}

std::string table_json_lines(const StrategyTable& table, int precision) {
  std::ostringstream out;
  for (const auto& c : table.cells()) {
    nlohmann::json j{{"variant", table.config().label()},
                     {"player", c.observable.player.key()},
                     {"dealer", c.observable.dealer.key()},
                     {"decision", std::string(1, to_char(c.decision))},
                     {"asterisk", c.asterisk},
                     {"exact_tie", c.exact_tie},
                     {"ev_hit", c.ev_hit.str()},
                     {"ev_stand", c.ev_stand.str()},
                     {"ev_hit_decimal", decimal(c.ev_hit, precision)},
                     {"ev_stand_decimal", decimal(c.ev_stand, precision)},
                     {"mass", c.mass.str()}};
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string export_table(const StrategyTable& table, OutputFormat format, int precision) {
  switch (format) {
    case OutputFormat::Markdown: return table_markdown(table);
    case OutputFormat::Csv: return table_csv(table, precision);
    case OutputFormat::JsonLines: return table_json_lines(table, precision);
  }
  return {};
}

std::vector<CsvCell> parse_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split(line, ',').size() != 8 || split(line, ',')[0] != "player")
    throw std::invalid_argument("missing strategy csv header");
  std::vector<CsvCell> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw std::invalid_argument("bad strategy csv row: " + line);
    CsvCell c;
    c.player = f[0];
    c.dealer = f[1];
    if (f[2] == "H") c.decision = Decision::Hit;
    else if (f[2] == "S") c.decision = Decision::Stand;
    else throw std::invalid_argument("bad decision in row: " + line);
    if (f[3] != "0" && f[3] != "1") throw std::invalid_argument("bad asterisk flag in row: " + line);
    c.asterisk = f[3] == "1";
    c.ev_hit = Rational::parse(f[4]);
    c.ev_stand = Rational::parse(f[5]);
    out.push_back(std::move(c));
  }
  return out;
}

bool csv_matches(const std::vector<CsvCell>& cells, const StrategyTable& table) {
  if (cells.size() != table.cells().size()) return false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& a = cells[i];
    const auto& b = table.cells()[i];
    if (a.player != b.observable.player.key() || a.dealer != b.observable.dealer.key() || a.ev_hit != b.ev_hit ||
        a.ev_stand != b.ev_stand || a.decision != b.decision || a.asterisk != b.asterisk)
      return false;
  }
  return true;
}

std::string overall_report(const std::string& label, const OverallResult& r, OutputFormat format, int precision) {
  const std::pair<const char*, const Rational*> metrics[] = {
      {"P(W)", &r.win}, {"P(L)", &r.loss}, {"P(T)", &r.tie}, {"E[X]", &r.ev}};
  std::ostringstream out;
  switch (format) {
    case OutputFormat::Markdown:
      out << "## Overall: " << label << "\n\n| Metric | Decimal | Exact |\n|---|---:|---|\n";
      for (const auto& [name, v] : metrics) out << "| " << name << " | " << decimal(*v, precision) << " | " << v->str() << " |\n";
      break;
    case OutputFormat::Csv:
      out << "variant,metric,exact,decimal\n";
      for (const auto& [name, v] : metrics) out << label << ',' << name << ',' << v->str() << ',' << decimal(*v, precision) << '\n';
      break;
    case OutputFormat::JsonLines: {
      nlohmann::json j{{"variant", label}};
      for (const auto& [name, v] : metrics) j[name] = {{"exact", v->str()}, {"decimal", decimal(*v, precision)}};
      out << j.dump() << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace onehit
