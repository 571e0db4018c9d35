#pragma once

#include <vector>

#include "spm/module.hpp"
#include "spm/ring.hpp"

namespace testing_support {

/// A spread of small modules: free, quotients, non-principal rings, local
/// and non-local.
inline std::vector<spm::ModulePtr> small_modules() {
  using namespace spm;
  const auto z4 = make_zmod(4);
  const auto z6 = make_zmod(6);
  const auto z8 = make_zmod(8);
  const auto f4 = make_poly_quotient(make_zmod(2), {1, 1, 1});
  const auto dual = make_poly_quotient(make_zmod(2), {0, 0, 1});
  return {
      make_free(make_zmod(2), 2),
      make_free(make_zmod(2), 3),
      make_free(z4, 1),
      make_free(z4, 2),
      make_free(z6, 1),
      make_free(z6, 2),
      make_free(make_zmod(9), 2),
      make_free(z8, 1),
      make_free(f4, 2),
      make_free(dual, 2),
      make_free(make_product({make_zmod(2), z4}), 1),
      FinModule::create(z4, 1, {{2}}),
      FinModule::create(z8, 2, {{2, 4}}),
      FinModule::create(z6, 2, {{2, 3}}),
      FinModule::create(dual, 2, {{2, 1}}),
      FinModule::create(make_zmod(12), 1, {{4}}),
  };
}

}  // namespace testing_support
