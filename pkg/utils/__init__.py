# Shared helpers: table_io
