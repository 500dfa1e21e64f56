"""Fischer-graph covers, geodesic proximality scans and star-studded CA."""
