# Orchestration package