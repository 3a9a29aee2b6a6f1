#pragma once

// Umbrella header for the component/organization activeness toolkit.

#include "caq/backends.hpp"
#include "caq/errors.hpp"
#include "caq/library.hpp"
#include "caq/manifest.hpp"
#include "caq/metrics.hpp"
#include "caq/registry_server.hpp"
#include "caq/render.hpp"
#include "caq/report.hpp"
#include "caq/timing.hpp"
