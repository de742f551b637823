/**
 * Copyright (c) 2026 The exmip authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#ifndef EXMIP_MPS_HPP
#define EXMIP_MPS_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "exmip/model.hpp"

namespace exmip {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the MPS subset NAME/ROWS/COLUMNS/RHS/RANGES/BOUNDS/ENDATA with
/// free-form whitespace tokenization. Every numeric literal is converted to
/// an exact rational; `p/q` fractions are accepted alongside decimals so
/// arbitrary rational data round-trips. A RANGES entry is materialized as a
/// second row. With maximize set, the objective is negated and the original
/// sense retained for reporting.
RationalMIP parse_mps(std::istream& in, bool maximize = false);
RationalMIP parse_mps_file(const std::string& path, bool maximize = false);

/// Writes a model readable back by parse_mps with exact rational equality.
void write_mps(const RationalMIP& model, std::ostream& out);

/// Solution file: header `=obj= p/q`, then one `name value` line per
/// nonzero entry.
void write_solution(const RationalMIP& model, const Solution& sol,
                    std::ostream& out);
Solution read_solution(const RationalMIP& model, std::istream& in);

}  // namespace exmip

#endif  // EXMIP_MPS_HPP
