#pragma once

#include "cbq/classifier.hpp"
#include "cbq/errors.hpp"
#include "cbq/gallery.hpp"
#include "cbq/geometry.hpp"
#include "cbq/map_spec.hpp"
#include "cbq/maps.hpp"
#include "cbq/rigidity.hpp"
#include "cbq/sampling.hpp"
#include "cbq/witnesses.hpp"
