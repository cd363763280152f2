# Core Django project package: settings only, the pipeline lives under apps/
