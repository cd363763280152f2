# Advisor bounded contexts, one Django app per pipeline stage
