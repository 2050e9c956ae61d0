#pragma once

#include "ward/error.hpp"
#include "ward/exactfield.hpp"
#include "ward/surface.hpp"
#include "ward/flows.hpp"
#include "ward/affine.hpp"
#include "ward/periodic.hpp"
#include "ward/io.hpp"
#include "ward/point_spec.hpp"
#include "ward/sampling.hpp"
#include "ward/svg.hpp"
