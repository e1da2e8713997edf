#ifndef GBP_GBP_HPP
#define GBP_GBP_HPP

#include "gbp/approx.hpp"
#include "gbp/error.hpp"
#include "gbp/exact.hpp"
#include "gbp/graph.hpp"
#include "gbp/io.hpp"
#include "gbp/kernel.hpp"
#include "gbp/model.hpp"
#include "gbp/reductions.hpp"

#endif  // GBP_GBP_HPP
