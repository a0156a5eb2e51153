#pragma once

#include "trendsig/error.hpp"
#include "trendsig/ingest.hpp"
#include "trendsig/mc.hpp"
#include "trendsig/report.hpp"
#include "trendsig/series.hpp"
#include "trendsig/sigtest.hpp"
#include "trendsig/trend.hpp"
