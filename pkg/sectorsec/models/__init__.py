# Models: scenario, distribution and sweep schemas
