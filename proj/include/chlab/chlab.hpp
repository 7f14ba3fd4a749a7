#pragma once

#include "chlab/error.hpp"
#include "chlab/linalg.hpp"
#include "chlab/jacobi.hpp"
#include "chlab/hermitian_core.hpp"
#include "chlab/eigen.hpp"
#include "chlab/su21.hpp"
#include "chlab/isometry.hpp"
#include "chlab/reflections.hpp"
#include "chlab/trace_geometry.hpp"
#include "chlab/decompose.hpp"
#include "chlab/momentum.hpp"
#include "chlab/triangle_groups.hpp"
#include "chlab/emit.hpp"
