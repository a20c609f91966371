#pragma once

#include "dbarlab/error.hpp"
#include "dbarlab/multi_index.hpp"
#include "dbarlab/poly.hpp"
#include "dbarlab/expr.hpp"
#include "dbarlab/form.hpp"
#include "dbarlab/domain.hpp"
#include "dbarlab/quadrature.hpp"
#include "dbarlab/trialspace.hpp"
#include "dbarlab/assembly.hpp"
#include "dbarlab/eig.hpp"
#include "dbarlab/reference.hpp"
#include "dbarlab/sandbox.hpp"
#include "dbarlab/report.hpp"
#include "dbarlab/experiments.hpp"
