#pragma once

#include "zdzeta/action.hpp"
#include "zdzeta/arith.hpp"
#include "zdzeta/error.hpp"
#include "zdzeta/funcfield.hpp"
#include "zdzeta/lattice.hpp"
#include "zdzeta/oracle.hpp"
#include "zdzeta/polyfp.hpp"
#include "zdzeta/primescan.hpp"
#include "zdzeta/spec_io.hpp"
#include "zdzeta/zeta.hpp"

namespace zdzeta {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace zdzeta
