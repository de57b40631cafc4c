#pragma once

#include "gwpt/gw_algebra.hpp"
#include "gwpt/pt_algebra.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gwpt {

class ParseError : public std::runtime_error {
public:
    ParseError(size_t pos, const std::string& msg)
        : std::runtime_error("at " + std::to_string(pos) + ": " + msg), pos(pos) {}
    size_t pos;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' int)*
//   atom   := gen | rational | 'w' | '(' expr ')'
//   gen    := ('ch'|'tch'|'tau'|'a') '(' int ',' label ')' | 'fch1' | 'fch0'
// w stands for iu; negative powers are allowed only on w and nonzero constants.
struct Expr {
    enum class Kind { number, unit_w, gen, add, sub, mul, neg, pow };
    Kind kind = Kind::number;
    size_t pos = 0;
    Rational value;           // number
    std::string fn;           // gen: ch, tch, tau, a, fch1, fch0
    int index = 0;            // gen index
    int class_index = 0;      // resolved basis index
    int exponent = 0;         // pow
    std::vector<Expr> kids;
};

Expr parse_expression(const std::string& text, const RingPtr& ring);

// Evaluated expression. PT results are in the tch basis when only tch generators occur,
// otherwise in the ch basis.
using ExprValue = std::variant<WScalar, PtElement, GwElement>;
ExprValue evaluate(const Expr& e, const RingPtr& ring);

PtElement parse_pt(const std::string& text, const RingPtr& ring);
GwElement parse_gw(const std::string& text, const RingPtr& ring);

std::string format_value(const ExprValue& v);
// format_value(evaluate(parse_expression(text)))
std::string canonical(const std::string& text, const RingPtr& ring);

}  // namespace gwpt
