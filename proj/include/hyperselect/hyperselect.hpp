#pragma once

#include "hyperselect/algorithms.hpp"
#include "hyperselect/binary_mapping.hpp"
#include "hyperselect/data.hpp"
#include "hyperselect/hypercomplex.hpp"
#include "hyperselect/opf.hpp"
#include "hyperselect/optimizer.hpp"
#include "hyperselect/random.hpp"
#include "hyperselect/report.hpp"
#include "hyperselect/selection.hpp"
#include "hyperselect/stats.hpp"
