"""Report building and the self-test runner behind the ``vf`` commands."""
