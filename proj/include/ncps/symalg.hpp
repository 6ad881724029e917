#pragma once

#include "ncps/symalg/adjoint.hpp"
#include "ncps/symalg/algebra.hpp"
#include "ncps/symalg/expression.hpp"
#include "ncps/symalg/hamiltonian.hpp"
#include "ncps/symalg/parser.hpp"
#include "ncps/symalg/substitution.hpp"
#include "ncps/symalg/truncation.hpp"
