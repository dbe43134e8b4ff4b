#pragma once
// cross-cutting verification battery; filled in alongside the step implementation
