#ifndef PVOTE_PVOTE_HPP
#define PVOTE_PVOTE_HPP

#include "core.hpp"
#include "parse.hpp"
#include "norms.hpp"
#include "solvers.hpp"
#include "convergence.hpp"
#include "simulate.hpp"
#include "report.hpp"

#endif // PVOTE_PVOTE_HPP
