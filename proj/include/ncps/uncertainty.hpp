#pragma once

#include "ncps/uncertainty/bounds.hpp"
#include "ncps/uncertainty/quadrature.hpp"
#include "ncps/uncertainty/report.hpp"
#include "ncps/uncertainty/sector.hpp"
#include "ncps/uncertainty/wavefunction.hpp"
