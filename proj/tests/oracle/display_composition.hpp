#pragma once

// Composition of full phi-families read off the four displayed formulas as text.
// Grammar: expr := term ('U' term)*, term := atom ('+' atom)*, atom := name | 'A' | '(' expr ')'.
// 'U' is the extended union, '+' set addition, 'A' the real set a(b+1).

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>

#include "brute_index.hpp"
#include "phicalc/index_family.hpp"

namespace oracle {

inline const std::map<std::string, std::string>& composition_display() {
  static const std::map<std::string, std::string> d = {
      {"lf", "I_lf U (I_bf + J_lf) U (I_ff + J_lf)"},
      {"rf", "J_rf U (I_rf + J_bf) U (I_rf + J_ff)"},
      {"bf", "(I_lf + J_rf) U (I_bf + J_bf) U (I_ff + J_bf) U (I_bf + J_ff)"},
      {"ff", "(I_lf + J_rf + A) U (I_bf + J_bf + A) U (I_ff + J_ff)"},
  };
  return d;
}

class DisplayEvaluator {
 public:
  DisplayEvaluator(const std::map<std::string, Brute>& env, double cutoff) : env_(env), cutoff_(cutoff) {}

  Brute eval(const std::string& text) {
    s_ = text;
    p_ = 0;
    Brute r = expr();
    skip();
    if (p_ != s_.size()) throw std::runtime_error("trailing text in display: " + s_.substr(p_));
    return r;
  }

 private:
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  Brute expr() {
    Brute r = term();
    while (eat('U')) r = extended_union(r, term(), cutoff_);
    return r;
  }
  Brute term() {
    Brute r = atom();
    while (eat('+')) r = add(r, atom(), cutoff_);
    return r;
  }
  Brute atom() {
    if (eat('(')) {
      Brute r = expr();
      if (!eat(')')) throw std::runtime_error("unbalanced parenthesis in display");
      return r;
    }
    skip();
    std::string name;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) name += s_[p_++];
    auto it = env_.find(name);
    if (it == env_.end()) throw std::runtime_error("unknown symbol in display: '" + name + "'");
    return it->second;
  }

  const std::map<std::string, Brute>& env_;
  double cutoff_;
  std::string s_;
  std::size_t p_ = 0;
};

struct FamilyTruncation {
  Brute lf, rf, bf, ff;
};

// I and J given by generators per face; every intermediate is listed up to the cutoff.
inline FamilyTruncation compose_by_display(const phicalc::IndexFamily& I, const phicalc::IndexFamily& J, double A,
                                           double cutoff) {
  std::map<std::string, Brute> env;
  const char* faces[] = {"lf", "rf", "bf", "ff"};
  const phicalc::Face fs[] = {phicalc::Face::lf, phicalc::Face::rf, phicalc::Face::bf, phicalc::Face::ff};
  for (int i = 0; i < 4; ++i) {
    env[std::string("I_") + faces[i]] = closure(I.at(fs[i]).generators(), cutoff);
    env[std::string("J_") + faces[i]] = closure(J.at(fs[i]).generators(), cutoff);
  }
  env["A"] = closure({{{A, 0.0}, 0}}, cutoff);
  DisplayEvaluator ev(env, cutoff);
  const auto& d = composition_display();
  return {ev.eval(d.at("lf")), ev.eval(d.at("rf")), ev.eval(d.at("bf")), ev.eval(d.at("ff"))};
}

}  // namespace oracle
