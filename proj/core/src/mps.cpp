/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "exmip/mps.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace exmip {

namespace {

struct Line {
  int number = 0;
  bool is_section = false;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw[0] == '*') continue;
    Line line;
    line.number = number;
    line.is_section = !std::isspace(static_cast<unsigned char>(raw[0]));
    std::istringstream ss(raw);
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

Rational parse_value(const std::string& tok, int line) {
  const auto q = Rational::parse(tok);
  if (!q) throw ParseError(line, "malformed numeric literal '" + tok + "'");
  return *q;
}

struct RowInfo {
  int index = -1;  // -1 for the objective row
  RowSense sense = RowSense::GreaterEqual;
};

}  // namespace

RationalMIP parse_mps(std::istream& in, bool maximize) {
  RationalMIP model;
  model.maximize = maximize;

  const std::vector<Line> lines = tokenize(in);
  std::map<std::string, RowInfo> row_of;
  std::map<std::string, int> col_of;
  std::string obj_row_name;
  bool have_obj_row = false;
  bool in_integer_block = false;
  bool saw_endata = false;
  std::vector<uint8_t> col_has_bound;  // explicit bound lines seen per column
  // RANGES are materialized as companion rows after all sections are read.
  std::vector<std::pair<int, Rational>> ranges;

  enum class Section { None, Name, Rows, Columns, Rhs, Ranges, Bounds };
  Section section = Section::None;

  const auto lookup_row = [&](const std::string& name, int line) -> RowInfo& {
    const auto it = row_of.find(name);
    if (it == row_of.end()) {
      throw ParseError(line, "reference to undefined row '" + name + "'");
    }
    return it->second;
  };

  for (const Line& line : lines) {
    if (saw_endata) throw ParseError(line.number, "content after ENDATA");
    if (line.is_section) {
      const std::string& head = line.tokens[0];
      if (head == "NAME") {
        section = Section::Name;
        if (line.tokens.size() > 1) model.name = line.tokens[1];
      } else if (head == "ROWS") {
        section = Section::Rows;
      } else if (head == "COLUMNS") {
        section = Section::Columns;
      } else if (head == "RHS") {
        section = Section::Rhs;
      } else if (head == "RANGES") {
        section = Section::Ranges;
      } else if (head == "BOUNDS") {
        section = Section::Bounds;
      } else if (head == "ENDATA") {
        saw_endata = true;
      } else {
        throw ParseError(line.number, "unknown section '" + head + "'");
      }
      continue;
    }

    switch (section) {
      case Section::None:
        throw ParseError(line.number, "data before any section header");
      case Section::Name:
        throw ParseError(line.number, "unexpected data in NAME section");
      case Section::Rows: {
        if (line.tokens.size() != 2) {
          throw ParseError(line.number, "ROWS entry needs 'sense name'");
        }
        const std::string& type = line.tokens[0];
        const std::string& name = line.tokens[1];
        if (row_of.count(name) != 0) {
          throw ParseError(line.number, "duplicate row '" + name + "'");
        }
        RowInfo info;
        if (type == "N") {
          if (have_obj_row) {
            throw ParseError(line.number, "duplicate objective (N) row");
          }
          have_obj_row = true;
          obj_row_name = name;
          info.index = -1;
        } else if (type == "G") {
          info.sense = RowSense::GreaterEqual;
          info.index = model.add_row(name, info.sense, Rational());
        } else if (type == "L") {
          info.sense = RowSense::LessEqual;
          info.index = model.add_row(name, info.sense, Rational());
        } else if (type == "E") {
          info.sense = RowSense::Equal;
          info.index = model.add_row(name, info.sense, Rational());
        } else {
          throw ParseError(line.number, "unknown row sense '" + type + "'");
        }
        row_of.emplace(name, info);
        break;
      }
      case Section::Columns: {
        if (line.tokens.size() >= 3 && line.tokens[1] == "'MARKER'") {
          if (line.tokens[2] == "'INTORG'") {
            in_integer_block = true;
          } else if (line.tokens[2] == "'INTEND'") {
            in_integer_block = false;
          } else {
            throw ParseError(line.number, "unknown marker " + line.tokens[2]);
          }
          break;
        }
        if (line.tokens.size() != 3 && line.tokens.size() != 5) {
          throw ParseError(line.number,
                           "COLUMNS entry needs 'col row value [row value]'");
        }
        const std::string& cname = line.tokens[0];
        int col;
        const auto it = col_of.find(cname);
        if (it == col_of.end()) {
          col = model.add_col(cname, Rational(0),
                              ExtendedRational::infinity(), in_integer_block);
          col_of.emplace(cname, col);
          col_has_bound.push_back(0);
        } else {
          col = it->second;
          if (in_integer_block && !model.integer[col]) {
            model.integer[col] = 1;
          }
        }
        for (size_t k = 1; k + 1 < line.tokens.size(); k += 2) {
          const std::string& rname = line.tokens[k];
          const Rational value = parse_value(line.tokens[k + 1], line.number);
          if (have_obj_row && rname == obj_row_name) {
            model.obj[col] += value;
            continue;
          }
          const RowInfo& info = lookup_row(rname, line.number);
          model.rows[info.index].push(col, value);
        }
        break;
      }
      case Section::Rhs: {
        if (line.tokens.size() != 3 && line.tokens.size() != 5) {
          throw ParseError(line.number,
                           "RHS entry needs 'set row value [row value]'");
        }
        for (size_t k = 1; k + 1 < line.tokens.size(); k += 2) {
          const std::string& rname = line.tokens[k];
          const Rational value = parse_value(line.tokens[k + 1], line.number);
          if (have_obj_row && rname == obj_row_name) {
            // MPS convention: an objective-row RHS is the negated constant.
            model.obj_constant = -value;
            continue;
          }
          const RowInfo& info = lookup_row(rname, line.number);
          model.rhs[info.index] = value;
        }
        break;
      }
      case Section::Ranges: {
        if (line.tokens.size() != 3 && line.tokens.size() != 5) {
          throw ParseError(line.number,
                           "RANGES entry needs 'set row value [row value]'");
        }
        for (size_t k = 1; k + 1 < line.tokens.size(); k += 2) {
          const std::string& rname = line.tokens[k];
          const Rational value = parse_value(line.tokens[k + 1], line.number);
          const RowInfo& info = lookup_row(rname, line.number);
          if (info.index < 0) {
            throw ParseError(line.number, "RANGES on objective row");
          }
          ranges.emplace_back(info.index, value);
        }
        break;
      }
      case Section::Bounds: {
        if (line.tokens.size() != 3 && line.tokens.size() != 4) {
          throw ParseError(line.number,
                           "BOUNDS entry needs 'type set col [value]'");
        }
        const std::string& type = line.tokens[0];
        const std::string& cname = line.tokens[2];
        const auto it = col_of.find(cname);
        if (it == col_of.end()) {
          throw ParseError(line.number,
                           "bound on undefined column '" + cname + "'");
        }
        const int col = it->second;
        col_has_bound[col] = 1;
        const bool needs_value =
            type == "UP" || type == "LO" || type == "FX" || type == "UI" ||
            type == "LI";
        if (needs_value && line.tokens.size() != 4) {
          throw ParseError(line.number, "bound type " + type + " needs a value");
        }
        const Rational value =
            needs_value ? parse_value(line.tokens[3], line.number) : Rational();
        if (type == "UP" || type == "UI") {
          model.ub[col] = value;
        } else if (type == "LO" || type == "LI") {
          model.lb[col] = value;
        } else if (type == "FX") {
          model.lb[col] = value;
          model.ub[col] = value;
        } else if (type == "FR") {
          model.lb[col] = ExtendedRational::neg_infinity();
          model.ub[col] = ExtendedRational::infinity();
        } else if (type == "MI") {
          model.lb[col] = ExtendedRational::neg_infinity();
        } else if (type == "PL") {
          model.ub[col] = ExtendedRational::infinity();
        } else if (type == "BV") {
          model.lb[col] = Rational(0);
          model.ub[col] = Rational(1);
          model.integer[col] = 1;
        } else {
          throw ParseError(line.number, "unknown bound type '" + type + "'");
        }
        break;
      }
    }
  }

  if (!have_obj_row) throw ParseError(0, "no objective (N) row defined");

  for (const auto& [row, range] : ranges) {
    // A range r turns the row into b - |r| <= ax <= b (for L-rows) etc.,
    // realized as a companion row.
    const Rational& b = model.rhs[row];
    const Rational r_abs = range.abs();
    RowSense companion_sense;
    Rational companion_rhs;
    switch (model.sense[row]) {
      case RowSense::LessEqual:
        companion_sense = RowSense::GreaterEqual;
        companion_rhs = b - r_abs;
        break;
      case RowSense::GreaterEqual:
        companion_sense = RowSense::LessEqual;
        companion_rhs = b + r_abs;
        break;
      case RowSense::Equal:
      default:
        // r >= 0: [b, b+r]; r < 0: [b - |r|, b].
        model.sense[row] = RowSense::GreaterEqual;
        if (range.sign() >= 0) {
          companion_sense = RowSense::LessEqual;
          companion_rhs = b + r_abs;
        } else {
          companion_sense = RowSense::LessEqual;
          companion_rhs = b;
          model.rhs[row] = b - r_abs;
        }
        break;
    }
    const int companion =
        model.add_row(model.row_name[row] + "__rng", companion_sense,
                      companion_rhs);
    model.rows[companion] = model.rows[row];
  }

  if (maximize) {
    for (Rational& c : model.obj) c = -c;
    model.obj_constant = -model.obj_constant;
  }
  for (int i = 0; i < model.m; ++i) model.rows[i].normalize();
  return model;
}

RationalMIP parse_mps_file(const std::string& path, bool maximize) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_mps(in, maximize);
}

namespace {

/// Exact textual form for MPS output: finite decimal expansion when the
/// denominator is 2^a * 5^b, otherwise "p/q".
std::string mps_literal(const Rational& q) {
  mpz_class den = q.den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 5);
    ++fives;
  }
  if (den != 1 || twos > 64 || fives > 64) return q.to_string();
  const unsigned digits = std::max(twos, fives);
  if (digits == 0) return q.num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = q.num() * scale / q.den();
  std::string s = mpz_class(abs(scaled)).get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  if (scaled < 0) s.insert(0, "-");
  return s;
}

}  // namespace

void write_mps(const RationalMIP& model, std::ostream& out) {
  out << "NAME " << (model.name.empty() ? "exmip_model" : model.name) << "\n";
  out << "ROWS\n";
  out << " N  OBJ\n";
  for (int i = 0; i < model.m; ++i) {
    out << " " << sense_char(model.sense[i]) << "  " << model.row_name[i]
        << "\n";
  }
  // Column-major entries; integer columns wrapped in marker pairs.
  std::vector<std::vector<std::pair<int, const Rational*>>> cols(
      static_cast<size_t>(model.n));
  for (int i = 0; i < model.m; ++i) {
    const SparseVec& r = model.rows[i];
    for (size_t k = 0; k < r.size(); ++k) {
      cols[r.idx[k]].emplace_back(i, &r.val[k]);
    }
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int marker_id = 0;
  const Rational sign = model.maximize ? Rational(-1) : Rational(1);
  for (int j = 0; j < model.n; ++j) {
    if (model.integer[j] && !in_int) {
      out << "    MARKER" << marker_id++ << "  'MARKER'  'INTORG'\n";
      in_int = true;
    } else if (!model.integer[j] && in_int) {
      out << "    MARKER" << marker_id++ << "  'MARKER'  'INTEND'\n";
      in_int = false;
    }
    if (!model.obj[j].is_zero()) {
      out << "    " << model.col_name[j] << "  OBJ  "
          << mps_literal(sign * model.obj[j]) << "\n";
    }
    for (const auto& [row, value] : cols[j]) {
      out << "    " << model.col_name[j] << "  " << model.row_name[row] << "  "
          << mps_literal(*value) << "\n";
    }
    if (model.obj[j].is_zero() && cols[j].empty()) {
      // Keep the column alive with an explicit zero objective entry.
      out << "    " << model.col_name[j] << "  OBJ  0\n";
    }
  }
  if (in_int) out << "    MARKER" << marker_id++ << "  'MARKER'  'INTEND'\n";
  out << "RHS\n";
  for (int i = 0; i < model.m; ++i) {
    if (!model.rhs[i].is_zero()) {
      out << "    RHS  " << model.row_name[i] << "  " << mps_literal(model.rhs[i])
          << "\n";
    }
  }
  if (!model.obj_constant.is_zero()) {
    out << "    RHS  OBJ  " << mps_literal(sign * -model.obj_constant) << "\n";
  }
  out << "BOUNDS\n";
  for (int j = 0; j < model.n; ++j) {
    const auto& lo = model.lb[j];
    const auto& hi = model.ub[j];
    const bool default_lo = lo.is_finite() && lo.value().is_zero();
    const bool default_hi = hi.is_pos_inf();
    if (default_lo && default_hi) continue;
    if (lo.is_finite() && hi.is_finite() && lo.value() == hi.value()) {
      out << " FX  BND  " << model.col_name[j] << "  "
          << mps_literal(lo.value()) << "\n";
      continue;
    }
    if (lo.is_neg_inf() && hi.is_pos_inf()) {
      out << " FR  BND  " << model.col_name[j] << "\n";
      continue;
    }
    if (lo.is_neg_inf()) {
      out << " MI  BND  " << model.col_name[j] << "\n";
    } else if (!default_lo) {
      out << " LO  BND  " << model.col_name[j] << "  "
          << mps_literal(lo.value()) << "\n";
    }
    if (hi.is_finite()) {
      out << " UP  BND  " << model.col_name[j] << "  "
          << mps_literal(hi.value()) << "\n";
    }
  }
  out << "ENDATA\n";
}

void write_solution(const RationalMIP& model, const Solution& sol,
                    std::ostream& out) {
  out << "=obj= " << model.report_objective(sol.objective).to_string() << "\n";
  for (int j = 0; j < model.n; ++j) {
    if (!sol.x[j].is_zero()) {
      out << model.col_name[j] << " " << sol.x[j].to_string() << "\n";
    }
  }
}

Solution read_solution(const RationalMIP& model, std::istream& in) {
  std::map<std::string, int> col_of;
  for (int j = 0; j < model.n; ++j) col_of.emplace(model.col_name[j], j);
  std::vector<Rational> x(static_cast<size_t>(model.n));
  std::string line;
  int number = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ss(line);
    std::string name, value;
    if (!(ss >> name)) continue;
    if (name == "=obj=") {
      saw_header = true;
      continue;
    }
    if (!(ss >> value)) throw ParseError(number, "missing value");
    const auto it = col_of.find(name);
    if (it == col_of.end()) {
      throw ParseError(number, "unknown column '" + name + "'");
    }
    const auto q = Rational::parse(value);
    if (!q) throw ParseError(number, "malformed value '" + value + "'");
    x[it->second] = *q;
  }
  if (!saw_header) throw ParseError(number, "missing =obj= header");
  return make_solution(model, std::move(x), SolutionOrigin::File);
}

}  // namespace exmip
