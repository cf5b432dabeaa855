#pragma once

#include <polytour/error.hpp>
#include <polytour/geometry.hpp>
#include <polytour/region.hpp>
#include <polytour/pseudotour.hpp>
#include <polytour/turngraph.hpp>
#include <polytour/transform.hpp>
#include <polytour/oracle.hpp>
#include <polytour/search.hpp>
#include <polytour/render.hpp>
