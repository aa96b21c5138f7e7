#pragma once

#include "crmhe/errors.hpp"
#include "crmhe/rng.hpp"
#include "crmhe/distributions.hpp"
#include "crmhe/quadrature.hpp"
#include "crmhe/entropy.hpp"
#include "crmhe/characterization.hpp"
#include "crmhe/kernel.hpp"
#include "crmhe/parallel.hpp"
#include "crmhe/simulation.hpp"
#include "crmhe/inference.hpp"
#include "crmhe/curve.hpp"
#include "crmhe/io.hpp"
