#pragma once

// Formulas used to compare the automaton compiler with the model checker.

#include <string>
#include <vector>

namespace msoeq::testing {

struct SuiteFormula {
  std::string text;
  std::vector<std::string> free;
};

inline const std::vector<SuiteFormula>& string_suite() {
  static const std::vector<SuiteFormula> s = {
      {"(lab_# x)", {"x"}},
      {"(edg_a x y)", {"x", "y"}},
      {"(exists y (edg_b x y))", {"x"}},
      {"(forall x (exists y (or (edg_a x y) (edg_b x y))))", {}},
      {"(exists x (forall y (not (edg_a y x))))", {}},
      {"(in x X)", {"X", "x"}},
      {"(singleton X)", {"X"}},
      {"(reach x y)", {"x", "y"}},
      {"(root x)", {"x"}},
      {"(eq x y)", {"x", "y"}},
      {"(forall x (implies (in x X) (exists y (and (edg_a x y) (in y X)))))", {"X"}},
      {"(exists X (and (in x X) (not (in y X))))", {"x", "y"}},
      {"(exists x y (and (edg_a x y) (exists z (edg_b y z))))", {}},
      {"(forall x y (implies (edg_a x y) (forall z (not (edg_b y z)))))", {}},
      {"(exists X (forall x (iff (in x X) (exists y (edg_a y x)))))", {}},
      {"(iff (lab_# x) (exists Y (in x Y)))", {"x"}},
      {"(not (exists x (exists y (and (reach x y) (not (eq x y))))))", {}},
      {"(exists X (and (forall x (implies (root x) (in x X)))"
       " (forall x y (implies (or (edg_a x y) (edg_b x y)) (iff (in x X) (not (in y X)))))"
       " (forall x (implies (not (exists y (or (edg_a x y) (edg_b x y)))) (in x X)))))",
       {}},
      {"(implies (in x X) (in y X))", {"X", "x", "y"}},
      {"(exists y (and (reach x y) (edg_b y z)))", {"x", "z"}},
      {"(forall Y (implies (in x Y) (in y Y)))", {"x", "y"}},
  };
  return s;
}

inline const std::vector<SuiteFormula>& tree_suite() {
  static const std::vector<SuiteFormula> s = {
      {"(lab_f x)", {"x"}},
      {"(edg_1 x y)", {"x", "y"}},
      {"(edg_2 x y)", {"x", "y"}},
      {"(root x)", {"x"}},
      {"(reach x y)", {"x", "y"}},
      {"(pre_succ x y)", {"x", "y"}},
      {"(singleton X)", {"X"}},
      {"(exists y (and (edg_1 x y) (lab_a y)))", {"x"}},
      {"(forall x (implies (lab_f x) (exists y (and (edg_1 x y) (lab_a y)))))", {}},
      {"(exists X (and (in x X) (forall y (implies (in y X) (lab_f y)))))", {"x"}},
      {"(forall x (iff (lab_a x) (not (lab_b x))))", {}},
      {"(exists x y (and (edg_1 x y) (edg_2 x z)))", {"z"}},
      {"(in x X)", {"X", "x"}},
      {"(eq x y)", {"x", "y"}},
      {"(exists x (forall y (implies (reach x y) (lab_f y))))", {}},
      {"(forall X (implies (and (in x X) (forall y z (implies (and (in y X) (edg_1 y z)) (in z X)))) (in w X)))",
       {"w", "x"}},
      {"(exists x y (and (pre_succ x y) (lab_a x) (lab_b y)))", {}},
      {"(implies (root x) (lab_f x))", {"x"}},
      {"(exists z (and (edg_1 z x) (edg_2 z y)))", {"x", "y"}},
      {"(not (exists X (and (in x X) (not (in y X)))))", {"x", "y"}},
  };
  return s;
}

}  // namespace msoeq::testing
