#pragma once

#include "divisum/arith/constants.hpp"
#include "divisum/arith/errors.hpp"
#include "divisum/arith/precision_real.hpp"
#include "divisum/arith/rational.hpp"
#include "divisum/arith/special.hpp"
#include "divisum/boundary/boundary.hpp"
#include "divisum/boundary/symbolic.hpp"
#include "divisum/jacobi/hypergeometric.hpp"
#include "divisum/jacobi/loglinear.hpp"
#include "divisum/jacobi/poly.hpp"
#include "divisum/jacobi/second_kind.hpp"
#include "divisum/lfun/lfunctions.hpp"
#include "divisum/modforms/eigenforms.hpp"
#include "divisum/modforms/qexpansion.hpp"
#include "divisum/quadrature.hpp"
#include "divisum/sums/extrapolate.hpp"
#include "divisum/sums/lhs.hpp"
#include "divisum/sums/params.hpp"
#include "divisum/sums/sigma.hpp"
#include "divisum/verify/extract.hpp"
#include "divisum/verify/gamma.hpp"
#include "divisum/verify/identity.hpp"
#include "divisum/verify/named.hpp"
#include "divisum/verify/physics.hpp"
#include "divisum/verify/rhs.hpp"
#include "divisum/whittaker/whittaker.hpp"
