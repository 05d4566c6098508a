# Total Semi-Stability Application Package
