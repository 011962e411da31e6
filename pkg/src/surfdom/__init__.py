"""Small dominating sets in triangulations of surfaces."""
