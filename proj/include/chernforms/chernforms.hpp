#ifndef CHERNFORMS_CHERNFORMS_HPP
#define CHERNFORMS_CHERNFORMS_HPP

#include "chernforms/errors.hpp"
#include "chernforms/jet.hpp"
#include "chernforms/exterior.hpp"
#include "chernforms/jet_matrix.hpp"
#include "chernforms/cholesky.hpp"
#include "chernforms/residual.hpp"
#include "chernforms/structural.hpp"
#include "chernforms/chern.hpp"
#include "chernforms/mdsl.hpp"
#include "chernforms/metric_file.hpp"
#include "chernforms/random_metric.hpp"
#include "chernforms/verify.hpp"

#endif  // CHERNFORMS_CHERNFORMS_HPP
